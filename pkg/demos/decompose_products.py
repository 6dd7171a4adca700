"""Split a product that lies in all six one-sided classes, class by class.

Run with:  python3 demos/decompose_products.py
"""
from qg.constructors import affine, cyclic_group, direct_product
from qg.decomposition import decompose

q = direct_product(cyclic_group(4), affine(3, 2, 2))
print(f"Z4 x (Z3, 2x+2y), order {q.n}")

for cls in ("left-F", "right-F", "left-SM", "right-SM", "left-E", "right-E"):
    d = decompose(q, cls)
    chain = " > ".join(str(len(c)) for c in d.chain)
    print(f"{cls:9} map {d.kind}  m={d.m}  chain sizes {chain}  |A|={d.A.n} |B|={d.B.n}")

# the two-sided class nests a right decomposition inside B
d = decompose(affine(6, 5, 1, 3), "F")
print("F on (Z6, 5x+y+3): factor orders", [f.n for f in d.factors()])
