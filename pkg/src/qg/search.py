"""Identity-constrained Latin square search with bitmask candidates.

Cells are filled in row-major order with values tried in increasing order,
so solutions appear in lexicographic order of the flattened table.  Each
instance of a required identity is parked on the first empty cell it reads
and re-evaluated once that cell is filled.  When one side is known and the
other side misses only its outermost cell, that cell is forced; cells left
with a single Latin candidate are forced as well.  Forced cells depend only
on earlier choices, so the lexicographic order is preserved.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import Quasigroup
from .errors import InconsistentConstraints, OrderBoundExceeded
from .identities import classify, flag_key, identities_for
from .terms import Blocked, compile_partial

UNCONSTRAINED_BOUND = 5
CONSTRAINED_BOUND = 6
MODES = ("count", "enumerate", "first_witness", "first_counterexample")


@dataclass(frozen=True)
class Constraints:
    flags: frozenset = frozenset()
    idempotent_diagonal: bool = False
    loop_identity: bool = False          # 0 is a two-sided identity
    cells: tuple = ()                    # ((row, col, value), ...)

    @classmethod
    def of(cls, *flags, **kwargs):
        return cls(frozenset(flag_key(f) for f in flags), **kwargs)


@dataclass
class SearchResult:
    count: int = 0
    tables: list = field(default_factory=list)

    @property
    def quasigroups(self):
        return [Quasigroup(t) for t in self.tables]


class _State:
    def __init__(self, n):
        self.n = n
        self.table = [-1] * (n * n)
        self.rowpos = [-1] * (n * n)   # rowpos[r*n + v] = column of v in row r
        self.colpos = [-1] * (n * n)   # colpos[c*n + v] = row of v in column c
        self.rowmask = [0] * n
        self.colmask = [0] * n

    def place(self, k, v):
        n = self.n
        r, c = divmod(k, n)
        self.table[k] = v
        self.rowpos[r * n + v] = c
        self.colpos[c * n + v] = r
        self.rowmask[r] |= 1 << v
        self.colmask[c] |= 1 << v

    def clear(self, k):
        n = self.n
        r, c = divmod(k, n)
        v = self.table[k]
        self.table[k] = -1
        self.rowpos[r * n + v] = -1
        self.colpos[c * n + v] = -1
        self.rowmask[r] &= ~(1 << v)
        self.colmask[c] &= ~(1 << v)


def _fixed_cells(n, cons):
    fixed = {}

    def put(r, c, v):
        if not (0 <= r < n and 0 <= c < n and 0 <= v < n):
            raise InconsistentConstraints(f"prescribed cell ({r},{c})={v} is out of range")
        if fixed.get((r, c), v) != v:
            raise InconsistentConstraints(f"cell ({r},{c}) is prescribed twice")
        fixed[(r, c)] = v

    if cons.idempotent_diagonal:
        for x in range(n):
            put(x, x, x)
    if cons.loop_identity:
        for x in range(n):
            put(0, x, x)
            put(x, 0, x)
    for r, c, v in cons.cells:
        put(r, c, v)
    return fixed


def _check_static(n, cons):
    flags = cons.flags
    idem = "idempotent" in flags or cons.idempotent_diagonal
    if n > 1 and idem and "unipotent" in flags:
        raise InconsistentConstraints("idempotent and unipotent conflict for n > 1")
    if n > 1 and idem and (cons.loop_identity or "loop" in flags):
        raise InconsistentConstraints("an idempotent loop has order 1")


class _Codegen:
    """Straight-line evaluator for one identity on a partial table.

    The generated function takes the variable values and returns 0 on a
    clash, 1 when the instance holds (possibly after forcing a cell) and
    2 + cell when it must wait for that cell.  A side evaluates to a value,
    to -1 - cell when an inner cell is missing, or to top - (a*n + b) when
    only its outermost operation on the known arguments a, b is missing.
    """

    def __init__(self, n):
        self.n = n
        self.lines = []
        self.count = 0

    def fresh(self):
        self.count += 1
        return f"t{self.count}_"   # variables are single letters, so no clash

    def emit(self, line, depth=1):
        self.lines.append("    " * depth + line)

    def inner(self, term, depth):
        """Code for a subterm whose every read must succeed; returns its name."""
        kind = term[0]
        if kind == "v":
            return term[1]
        if kind in "efs":
            a = self.inner(term[1], depth)
            b = a
            op = {"e": "\\", "f": "/", "s": "*"}[kind]
        else:
            a = self.inner(term[1], depth)
            b = self.inner(term[2], depth)
            op = kind
        out = self.fresh()
        if op == "*":
            self.emit(f"{out} = T[{a}*n+{b}]", depth)
            self.emit(f"if {out} < 0: return -1-({a}*n+{b})", depth)
        elif op == "\\":
            self.emit(f"{out} = RP[{a}*n+{b}]", depth)
            self.emit(f"if {out} < 0: return -1-rowhole({a})", depth)
        else:
            self.emit(f"{out} = CP[{b}*n+{a}]", depth)
            self.emit(f"if {out} < 0: return -1-colhole({b})", depth)
        return out

    def side(self, name, term, args):
        """A side function; returns the outermost operation symbol or None."""
        self.emit(f"def {name}({args}):", 0)
        kind = term[0]
        if kind == "v":
            self.emit(f"return {term[1]}")
            return None
        if kind in "efs":
            a = self.inner(term[1], 1)
            b = a
            op = {"e": "\\", "f": "/", "s": "*"}[kind]
        else:
            a = self.inner(term[1], 1)
            b = self.inner(term[2], 1)
            op = kind
        if op == "*":
            self.emit(f"out_ = T[{a}*n+{b}]")
        elif op == "\\":
            self.emit(f"out_ = RP[{a}*n+{b}]")
        else:
            self.emit(f"out_ = CP[{b}*n+{a}]")
        self.emit(f"if out_ < 0: return TOP-({a}*n+{b})")
        self.emit("return out_")
        return op


def _force_cell(op, ab, w, n):
    """Cell and value that make the outermost operation on (a, b) equal w."""
    a, b = divmod(ab, n)
    if op == "*":
        return ab, w
    if op == "\\":          # a\b = w  <=>  a*w = b
        return a * n + w, b
    return w * n + b, a     # a/b = w  <=>  w*b = a


def _wait_cell(op, ab, n, rowhole, colhole):
    a, b = divmod(ab, n)
    if op == "*":
        return ab
    if op == "\\":
        return rowhole(a)
    return colhole(b)


def _compile_instance_checker(ident, state, place):
    n = state.n
    table = state.table
    top = -1 - n * n

    def rowhole(a):
        base = a * n
        for c in range(n):
            if table[base + c] < 0:
                return base + c
        raise AssertionError("row is full but a value is missing")

    def colhole(b):
        for r in range(n):
            if table[r * n + b] < 0:
                return r * n + b
        raise AssertionError("column is full but a value is missing")

    args = ", ".join(ident.vars)
    gen = _Codegen(n)
    lop = gen.side("L", ident.lhs, args)
    rop = gen.side("R", ident.rhs, args)
    gen.emit(f"def check({args}):", 0)
    gen.emit(f"lv = L({args})")
    gen.emit(f"rv = R({args})")
    gen.emit("if lv >= 0 and rv >= 0: return 1 if lv == rv else 0")
    gen.emit("return settle(lv, rv)")
    namespace = {"T": table, "RP": state.rowpos, "CP": state.colpos, "n": n, "TOP": top,
                 "rowhole": rowhole, "colhole": colhole}

    def settle(lv, rv):
        if lv >= 0 or rv >= 0:
            known, blocked, op = (lv, rv, rop) if lv >= 0 else (rv, lv, lop)
            if blocked > top:
                return 2 + (-1 - blocked)
            k, v = _force_cell(op, top - blocked, known, n)
            return 1 if place(k, v) else 0
        if lv > top:
            return 2 + (-1 - lv)
        return 2 + _wait_cell(lop, top - lv, n, rowhole, colhole)

    namespace["settle"] = settle
    exec("\n".join(gen.lines), namespace)
    return namespace["check"]


def _identities(cons, mirror=False):
    idents = []
    for flag in sorted(cons.flags):
        for ident in identities_for(flag):
            if mirror:
                ident = ident.mirrored()
            if ident.text not in {i.text for i in idents}:
                idents.append(ident)
    return idents


def _map_operands(term, counts):
    """Count local maps used as left and as right operands of a product."""
    if term[0] == "v":
        return counts
    if term[0] in "*\\/":
        counts[0] += term[1][0] in "ef"
        counts[1] += term[2][0] in "ef"
    for sub in term[1:]:
        _map_operands(sub, counts)
    return counts


def _prefers_mirror(cons):
    """Row-major filling prunes late when e(x) or f(x) is a left operand;
    transposing turns those into right operands (measured, not proven)."""
    counts = [0, 0]
    for ident in _identities(cons):
        _map_operands(ident.lhs, counts)
        _map_operands(ident.rhs, counts)
    return counts[0] > counts[1]


class _Solver:
    """Backtracking state with a trail.

    Trail entries: (0, k) cell placed; (1, k, parked) watchers of k taken;
    (2, k) one instance parked on k.
    """

    def __init__(self, n, cons, mirror=False):
        self.n = n
        self.state = st = _State(n)
        self.full = (1 << n) - 1
        self.trail = []
        self.pending = []
        self.dead = False
        self.use_singles = bool(cons.flags)
        _check_static(n, cons)
        fixed = _fixed_cells(n, cons)
        for (r, c), v in sorted(fixed.items()):
            if (st.rowmask[r] | st.colmask[c]) >> v & 1:
                raise InconsistentConstraints(f"prescribed cell ({r},{c})={v} breaks the Latin property")
            st.place(r * n + c, v)
        self.watchers = [[] for _ in range(n * n)]
        idents = _identities(cons, mirror)
        plain = []
        self.checks = []
        for ident in idents:
            index = {v: i for i, v in enumerate(ident.vars)}
            plain.append((compile_partial(ident.lhs, index, st), compile_partial(ident.rhs, index, st)))
            self.checks.append(_compile_instance_checker(ident, st, self._place))
        instances = [(ci, env) for ci, ident in enumerate(idents) for env in ident.instances(n)]
        for ci, env in instances:
            lhs, rhs = plain[ci]
            try:
                bad = lhs(env) != rhs(env)
            except Blocked:
                continue
            if bad:
                ident = idents[ci]
                raise InconsistentConstraints(
                    f"prescribed cells violate {ident.text} at {dict(zip(ident.vars, env))}"
                )
        ok = all(self._process(inst) for inst in instances)
        ok = ok and all(self._singles(k) for k in range(n * n) if st.table[k] >= 0)
        self.dead = not (ok and self._propagate())
        self.trail = []

    def _park(self, cell, inst):
        self.watchers[cell].append(inst)
        self.trail.append((2, cell))

    def _process(self, inst):
        """Evaluate one instance; park, force a cell, or report a clash."""
        code = self.checks[inst[0]](*inst[1])
        if code >= 2:
            self._park(code - 2, inst)
            return True
        return code == 1

    def _place(self, k, v):
        st = self.state
        cur = st.table[k]
        if cur >= 0:
            return cur == v
        r, c = divmod(k, self.n)
        if (st.rowmask[r] | st.colmask[c]) >> v & 1:
            return False
        st.place(k, v)
        self.trail.append((0, k))
        self.pending.append(k)
        return True

    def _singles(self, k):
        """Fail on an empty cell with no candidate; fill cells with exactly one."""
        st = self.state
        n, full, table = self.n, self.full, st.table
        rowmask, colmask = st.rowmask, st.colmask
        r, c = divmod(k, n)
        for cell in [r * n + j for j in range(n)] + [i * n + c for i in range(n)]:
            if table[cell] >= 0:
                continue
            cand = full & ~(rowmask[cell // n] | colmask[cell % n])
            if not cand:
                return False
            if not cand & (cand - 1):
                if not self._place(cell, cand.bit_length() - 1):
                    return False
        return True

    def _propagate(self):
        pending = self.pending
        watchers = self.watchers
        while pending:
            k = pending.pop()
            parked = watchers[k]
            if parked:
                watchers[k] = []
                self.trail.append((1, k, parked))
                for inst in parked:
                    if not self._process(inst):
                        pending.clear()
                        return False
            if self.use_singles and not self._singles(k):
                pending.clear()
                return False
        return True

    def assign(self, k, v):
        return self._place(k, v) and self._propagate()

    def undo(self, mark):
        trail, st, watchers = self.trail, self.state, self.watchers
        while len(trail) > mark:
            entry = trail.pop()
            if entry[0] == 0:
                st.clear(entry[1])
            elif entry[0] == 1:
                watchers[entry[1]] = entry[2]
            else:
                watchers[entry[1]].pop()

    def _branches(self, start):
        """Next empty cell at or after ``start`` and its candidate values."""
        st, n = self.state, self.n
        table = st.table
        k = start
        while k < n * n and table[k] >= 0:
            k += 1
        if k == n * n:
            return k, []
        r, c = divmod(k, n)
        cand = self.full & ~(st.rowmask[r] | st.colmask[c])
        return k, [v for v in range(n) if cand >> v & 1]

    def run(self, visit, start=0):
        """Depth-first search in row-major order; ``visit(table)`` returns True to stop."""
        if self.dead:
            return False
        table = self.state.table
        size = self.n * self.n

        def rec(start):
            k, values = self._branches(start)
            if k == size:
                return visit(table)
            for v in values:
                mark = len(self.trail)
                stop = self.assign(k, v) and rec(k + 1)
                self.undo(mark)
                if stop:
                    return True
            return False

        return rec(start)

    def prefixes(self, depth):
        """Branch decisions ((cell, value), ...) down to ``depth``, in search order."""
        out = []
        if self.dead:
            return out
        size = self.n * self.n
        chosen = []

        def rec(start, d):
            k, values = self._branches(start)
            if d == depth or k == size:
                out.append(tuple(chosen))
                return
            for v in values:
                mark = len(self.trail)
                if self.assign(k, v):
                    chosen.append((k, v))
                    rec(k + 1, d + 1)
                    chosen.pop()
                self.undo(mark)

        rec(0, 0)
        return out


def _run_subtree(args):
    n, cons, prefix, mode, limit, target = args[:6]
    mirror = args[6] if len(args) > 6 else False
    solver = _Solver(n, cons, mirror)
    for k, v in prefix:
        if not solver.assign(k, v):
            return SearchResult()
    result = SearchResult()

    def visit(table):
        if mode == "count":
            result.count += 1
            return False
        tab = tuple(tuple(table[r * n:(r + 1) * n]) for r in range(n))
        if mode == "first_counterexample":
            if getattr(classify(Quasigroup(tab)), target):
                return False
        result.count += 1
        result.tables.append(tab)
        if mode in ("first_witness", "first_counterexample"):
            return True
        return limit is not None and result.count >= limit

    solver.run(visit, prefix[-1][0] + 1 if prefix else 0)
    return result


def _orbit_reducible(n, cons):
    # identities are label-free, prescribed cells and a named identity are not
    return n >= 3 and bool(cons.flags) and not cons.cells and not cons.loop_identity


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def canonical_first_rows(n):
    """Row-0 permutations covering every quasigroup up to relabeling.

    Relabeling by pi turns row a into pi L_a pi^-1 with a sent to 0, so one
    row per cycle type and per length of the cycle holding 0 suffices.
    """
    rows = []
    for shape in _partitions(n):
        for first in sorted(set(shape)):
            lengths = list(shape)
            lengths.remove(first)
            row = [0] * n
            start = 0
            for length in [first] + lengths:
                for i in range(length):
                    row[start + i] = start + (i + 1) % length
                start += length
            rows.append(tuple(row))
    return rows


def relabelings(table):
    """Every table pi(x)*pi(y) = pi(x*y) over all relabelings pi."""
    from itertools import permutations

    n = len(table)
    out = set()
    for pi in permutations(range(n)):
        t = [[0] * n for _ in range(n)]
        for x in range(n):
            row, px = table[x], t[pi[x]]
            for y in range(n):
                px[pi[y]] = pi[row[y]]
        out.add(tuple(map(tuple, t)))
    return out


def _orbit_search(n, cons, mode, limit, jobs):
    """All solutions, found with a canonical first row and closed under relabeling.

    When the identities mostly read columns the transposed problem is
    searched instead and its solutions transposed back.
    """
    mirror = _prefers_mirror(cons)
    tasks = []
    for row in canonical_first_rows(n):
        sub = Constraints(cons.flags, cons.idempotent_diagonal, False,
                          tuple((0, c, v) for c, v in enumerate(row)))
        try:
            _Solver(n, sub, mirror)
        except InconsistentConstraints:
            continue
        tasks.append((n, sub, (), "enumerate", None, None, mirror))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_subtree, tasks))
    else:
        parts = [_run_subtree(t) for t in tasks]
    found = set()
    for part in parts:
        for tab in part.tables:
            if mirror:
                tab = tuple(zip(*tab))
            if tab not in found:
                found |= relabelings(tab)
    if mode == "count":
        return SearchResult(len(found))
    tables = sorted(found)
    if limit is not None:
        tables = tables[:limit]
    return SearchResult(len(tables), tables)


def search_quasigroups(order, constraints=None, mode="count", limit=None, target=None,
                       jobs=1, symmetry=False, max_order=None, split_depth=None):
    """Count or list the quasigroups of a given order meeting the constraints.

    Counting and enumeration under identity flags alone search one first row
    per relabeling class and then close the solutions under relabeling; the
    tables and their order are the same as a plain row-major search.
    ``symmetry`` fixes the first row to the identity permutation (off by
    default, so raw counts are reproduced).  Results do not depend on ``jobs``.
    """
    cons = constraints or Constraints()
    if symmetry:
        cons = Constraints(cons.flags, cons.idempotent_diagonal, cons.loop_identity,
                           tuple(cons.cells) + tuple((0, c, c) for c in range(order)))
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "first_counterexample":
        if target is None:
            raise ValueError("first_counterexample needs a target flag")
        target = flag_key(target)
    if order < 1:
        raise ValueError("order must be positive")
    bound = max_order
    if bound is None:
        bound = CONSTRAINED_BOUND if cons.flags else UNCONSTRAINED_BOUND
    if order > bound:
        raise OrderBoundExceeded(f"order {order} exceeds the search bound {bound}")

    root = _Solver(order, cons)
    if mode in ("count", "enumerate") and _orbit_reducible(order, cons) and not root.dead:
        return _orbit_search(order, cons, mode, limit, jobs)
    if jobs <= 1:
        return _run_subtree((order, cons, (), mode, limit, target))

    depth = split_depth if split_depth is not None else order
    tasks = [(order, cons, p, mode, limit, target) for p in root.prefixes(depth)]
    merged = SearchResult()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_run_subtree, tasks):
            merged.count += part.count
            merged.tables.extend(part.tables)
    if mode in ("first_witness", "first_counterexample"):
        merged.tables = merged.tables[:1]
        merged.count = len(merged.tables)
    elif mode == "enumerate" and limit is not None:
        merged.tables = merged.tables[:limit]
        merged.count = len(merged.tables)
    return merged


def naive_count(order, predicate=None):
    """Reference count by filtering every row-permutation tuple (small orders only)."""
    from itertools import permutations, product

    rows = list(permutations(range(order)))
    count = 0
    for table in product(rows, repeat=order):
        if any(len({table[r][c] for r in range(order)}) != order for c in range(order)):
            continue
        if predicate is None or predicate(Quasigroup(table)):
            count += 1
    return count
