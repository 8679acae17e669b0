"""Constructive builders: closed quasigroups, rectangle completion, switching,
irreducible tables, and the switching-component counting families.
"""

import enum
import itertools
import json
from dataclasses import dataclass

from . import analysis
from .core import (
    QTable,
    from_function,
    from_json_obj,
    from_rows,
    inverse_along,
    iterate,
    superpose,
    validate,
)


class ConstructionError(ValueError):
    """A builder was asked for parameters it cannot serve."""


class CompletionError(ConstructionError):
    """Partial rectangle admits no completion; names a Hall-violating set."""

    def __init__(self, violator):
        self.violator = frozenset(violator)
        super().__init__(
            "no completion: symbols %s cannot all be placed"
            % sorted(self.violator))


class FixtureId(enum.Enum):
    Q42 = "Q42"
    Q52 = "Q52"
    Q62 = "Q62"
    Q72 = "Q72"


# The four stored arrays.  All are {0,1}-closed.  The order-5 array is the
# unique Latin completion of the published rows; see fixture() for the two
# forced cells.
_FIXTURES_JSON = """
{
  "Q42": {"arity": 2, "order": 4, "values":
    [0, 1, 2, 3,
     1, 0, 3, 2,
     2, 3, 0, 1,
     3, 2, 1, 0]},
  "Q52": {"arity": 2, "order": 5, "values":
    [0, 1, 2, 3, 4,
     1, 0, 3, 4, 2,
     2, 4, 0, 1, 3,
     3, 2, 4, 0, 1,
     4, 3, 1, 2, 0]},
  "Q62": {"arity": 2, "order": 6, "values":
    [0, 1, 2, 3, 4, 5,
     1, 0, 3, 2, 5, 4,
     4, 5, 0, 1, 2, 3,
     5, 4, 1, 0, 3, 2,
     2, 3, 4, 5, 0, 1,
     3, 2, 5, 4, 1, 0]},
  "Q72": {"arity": 2, "order": 7, "values":
    [0, 1, 2, 3, 4, 5, 6,
     1, 0, 3, 4, 5, 6, 2,
     2, 4, 0, 1, 6, 3, 5,
     3, 5, 6, 0, 1, 2, 4,
     4, 6, 5, 2, 0, 1, 3,
     5, 2, 4, 6, 3, 0, 1,
     6, 3, 1, 5, 2, 4, 0]}
}
"""

_FIXTURES = None


def fixture(fid):
    """One of the four stored binary arrays, by id.

    Q52 is the corrected order-5 array: the two out-of-range glyphs in its
    published form (row 2 col 4, row 4 col 3) are replaced by the values 3
    and 2 forced by the Latin property on the surrounding rows/columns.
    """
    global _FIXTURES
    if _FIXTURES is None:
        raw = json.loads(_FIXTURES_JSON)
        _FIXTURES = {key: from_json_obj(obj) for key, obj in raw.items()}
    if isinstance(fid, str):
        fid = FixtureId(fid)
    return _FIXTURES[fid.value]


def build_qkr(k, r):
    """Closed-formula binary quasigroup of order k with {0..r-1} closed.

    Needs 2 <= r <= k//2 and k - r odd.  The sub-block on {0..r-1}^2 is
    (i+j) mod r; the remaining three blocks are built from arithmetic
    modulo m = k - r.
    """
    if not (isinstance(k, int) and isinstance(r, int)):
        raise ConstructionError("k and r must be integers")
    if not 2 <= r <= k // 2:
        raise ConstructionError("need 2 <= r <= k//2, got r=%d, k=%d" % (r, k))
    m = k - r
    if m % 2 == 0:
        raise ConstructionError(
            "formula inapplicable for even k - r; use build_closed")

    def q(i, j):
        if i < r and j < r:
            return (i + j) % r
        if i >= r and j < r:
            return ((i - r) + j) % m + r
        if i < r and j >= r:
            return (2 * i + (j - r)) % m + r
        d = ((i - r) - (j - r)) % m
        if d < r:
            return d
        return (2 * (i - r) - (j - r)) % m + r

    t = from_function(2, k, q)
    rep = validate(t)
    if not rep.ok:
        raise ConstructionError("formula produced a non-Latin table at k=%d r=%d"
                                % (k, r))
    return t


@dataclass(frozen=True)
class PartialRectangle:
    """First rows of an order-k square, entries in {0..k-1} or None.

    No symbol may repeat within a row or within a column's filled cells.
    """

    order: int
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))


def _check_partial(p):
    k = p.order
    if len(p.rows) > k:
        raise ConstructionError("more rows than the order allows")
    col_used = [set() for _ in range(k)]
    for i, row in enumerate(p.rows):
        if len(row) != k:
            raise ConstructionError("row %d has length %d, want %d"
                                    % (i, len(row), k))
        seen = set()
        for j, v in enumerate(row):
            if v is None:
                continue
            if not isinstance(v, int) or not 0 <= v < k:
                raise ConstructionError("entry %r out of range at (%d,%d)"
                                        % (v, i, j))
            if v in seen:
                raise ConstructionError("symbol %d repeats in row %d" % (v, i))
            if v in col_used[j]:
                raise ConstructionError("symbol %d repeats in column %d" % (v, j))
            seen.add(v)
            col_used[j].add(v)
    return col_used


def _match_row(symbols, columns, col_used):
    """Assign each symbol a column it may occupy, or raise CompletionError.

    Kuhn's matching with ascending scan everywhere, so the completion is
    deterministic.  On failure the reachable symbol set is a Hall violator.
    """
    match = {}   # column -> symbol

    def augment(s, visited):
        for c in columns:
            if c in visited or s in col_used[c]:
                continue
            visited.add(c)
            if c not in match or augment(match[c], visited):
                match[c] = s
                return True
        return False

    for s in symbols:
        visited = set()
        if not augment(s, visited):
            violator = {s} | {match[c] for c in visited if c in match}
            raise CompletionError(violator)
    return {s: c for c, s in match.items()}


def complete_rectangle(p):
    """Extend a partial rectangle to a full order-k quasigroup.

    First fills the holes of each given row (top to bottom), then appends
    the missing rows, choosing cells by bipartite matching of symbols
    against admissible columns.  A full valid table passes through
    unchanged.
    """
    col_used = _check_partial(p)
    k = p.order
    rows = [list(r) for r in p.rows]
    for row in rows:
        holes = [j for j, v in enumerate(row) if v is None]
        if not holes:
            continue
        missing = sorted(set(range(k)) - {v for v in row if v is not None})
        placed = _match_row(missing, holes, col_used)
        for s, c in placed.items():
            row[c] = s
            col_used[c].add(s)
    while len(rows) < k:
        placed = _match_row(range(k), range(k), col_used)
        row = [None] * k
        for s, c in placed.items():
            row[c] = s
            col_used[c].add(s)
        rows.append(row)
    t = from_rows(rows)
    rep = validate(t)
    if not rep.ok:
        raise ConstructionError("completion produced a non-Latin table")
    return t


def _closed_binary(k, r):
    """Binary {0..r-1}-closed table: direct formula when it applies,
    otherwise completion of the cyclic block."""
    if (k - r) % 2 == 1:
        return build_qkr(k, r)
    seed = tuple(
        tuple((i + j) % r if j < r else None for j in range(k))
        for i in range(r))
    return complete_rectangle(PartialRectangle(k, seed))


def build_closed(n, k, r):
    """n-ary quasigroup of order k closed on {0..r-1}.

    Right-nested superposition of a single closed binary table, so the
    restriction to the sub-alphabet is that binary table iterated.
    """
    if n < 2:
        raise ConstructionError("need arity >= 2")
    if not 2 <= r <= k // 2:
        raise ConstructionError("need 2 <= r <= k//2, got r=%d, k=%d" % (r, k))
    return iterate(_closed_binary(k, r), n - 1)


def switch_sub(q, omega, h):
    """Replace q on omega^n by h, keeping all other values.

    q must map omega^n into omega; h is an order-|omega| table whose symbols
    0..|omega|-1 stand for the sorted elements of omega.
    """
    om = tuple(sorted(set(omega)))
    n, k = q.arity, q.order
    if not om or any(not 0 <= s < k for s in om):
        raise ConstructionError("omega must be a nonempty subset of 0..%d"
                                % (k - 1))
    if h.arity != n or h.order != len(om):
        raise ConstructionError(
            "replacement table has shape (%d,%d), want (%d,%d)"
            % (h.arity, h.order, n, len(om)))
    if not validate(h).ok:
        raise ConstructionError("replacement table is not a quasigroup")
    pos = {s: i for i, s in enumerate(om)}
    vals = list(q.values)
    for x in itertools.product(om, repeat=n):
        idx = q.index(x)
        if vals[idx] not in pos:
            raise ConstructionError(
                "table is not closed on %s: value %d at %r"
                % (list(om), vals[idx], x))
        vals[idx] = om[h.values[h.index(tuple(pos[c] for c in x))]]
    return QTable(n, k, tuple(vals))


def _parity_shift(n, shift):
    return from_function(n, 2, lambda *x: (sum(x) + shift) % 2)


def irreducible_base(n, k):
    """The reducible table that build_irreducible switches.

    Exposed so the pre-switch table can be checked to be reducible.
    """
    if n < 3 or k < 4:
        raise ConstructionError("need arity >= 3 and order >= 4")
    if n >= 4:
        return build_closed(n, k, 2)
    if k <= 7:
        fix = fixture(FixtureId("Q%d2" % k))
        return superpose(fix, 1, fix)
    return build_closed(3, k, 4)


def build_irreducible(n, k):
    """A permutably irreducible n-ary quasigroup of order k (n>=3, k>=4).

    For n >= 4: a {0,1}-closed table with its parity block replaced by
    parity+1.  For n = 3 and k <= 7: the left-nested square of the stored
    order-k array, same parity switch.  For n = 3 and k >= 8: an order-4
    irreducible ternary table transplanted into a {0,1,2,3}-closed one.
    """
    base = irreducible_base(n, k)
    if n >= 4 or k <= 7:
        return switch_sub(base, (0, 1), _parity_shift(n, 1))
    return switch_sub(base, (0, 1, 2, 3), build_irreducible(3, 4))


def build_ptq(k):
    """Binary quasigroup of odd order k >= 7 (k not divisible by 3) whose
    2x2 blocks {2j,2j+1} x {2i,2i+1} carry consecutive value pairs.

    Rows 2j are translations by 3j; rows 2j+1 apply the permutation pi
    first; the next floor(k/3) rows use tau; the final one (k = 1 mod 3)
    or two (k = 2 mod 3) rows follow fixed tail patterns.  The result is
    always validated: a Latin failure means the pattern does not extend to
    this k and is reported, never returned.
    """
    if k < 7 or k % 2 == 0 or k % 3 == 0:
        raise ConstructionError(
            "order must be odd, >= 7, and not divisible by 3; got %d" % k)
    t = k // 3

    pi = list(range(k))
    for m2 in range(0, k - 4, 2):  # transpositions (2m, 2m+1) while 2m <= k-5
        pi[m2], pi[m2 + 1] = pi[m2 + 1], pi[m2]
    pi[k - 3], pi[k - 2], pi[k - 1] = k - 2, k - 1, k - 3

    tau = list(range(k))
    tau[0] = k - 1
    for m2 in range(1, k - 3, 2):  # transpositions (2m+1, 2m+2) while 2m+2 <= k-3
        tau[m2], tau[m2 + 1] = tau[m2 + 1], tau[m2]
    tau[k - 2] = 0
    tau[k - 1] = k - 2

    rows = [[0] * k for _ in range(k)]
    for j in range(t):
        for i in range(k):
            rows[2 * j][i] = (i + 3 * j) % k
            rows[2 * j + 1][i] = (pi[i] + 3 * j) % k
    for j in range(t):
        for i in range(k):
            rows[2 * t + j][i] = (tau[i] + 3 * j) % k
    if k % 3 == 2:
        for i in range(k - 2):
            rows[k - 2][i] = (i - 3) % k
        rows[k - 2][k - 2] = k - 4
        rows[k - 2][k - 1] = k - 5
    for i in range(k - 2):
        rows[k - 1][i] = (i - 2) % k
    rows[k - 1][k - 2] = k - 3
    rows[k - 1][k - 1] = k - 4

    table = from_rows(rows)
    rep = validate(table)
    if not rep.ok:
        raise ConstructionError(
            "row pattern does not close into a Latin square at k=%d "
            "(first bad line: axis %d at %r)"
            % (k, rep.violations[0].axis, rep.violations[0].fixed))
    return table


@dataclass(frozen=True)
class CountingFamily:
    """A base table plus pairwise disjoint switching sets.

    Flipping the sets independently yields 2**claimed_log2 distinct
    quasigroups.
    """

    base: QTable
    components: tuple
    claimed_log2: int


# Cells of the two 01-switching sets of the order-5 fixture.
_D0 = ((0, 0), (0, 1), (1, 0), (1, 1))
_D1 = ((2, 2), (2, 3), (3, 3), (3, 4), (4, 2), (4, 4))


def _family5_blocks(n):
    """Arity split into blocks of 3 (squared table) and 2 (plain table)."""
    m, rem = divmod(n, 3)
    if rem == 0:
        return [3] * m
    if rem == 1:
        return [3] * (m - 1) + [2, 2]
    return [3] * m + [2]


def build_family5(n):
    """Disjoint 01-switching sets on an order-5 table of arity n >= 2.

    The base is a superposition of squared copies of the order-5 fixture;
    each 3-ary block carries three disjoint sets (T0, T1, T2) and each
    2-ary block two (D0, D1).  Their per-block products are switching sets
    of the whole table, giving 3^m, 4*3^(m-1), or 2*3^m of them according
    to n mod 3.
    """
    if n < 2:
        raise ConstructionError("need arity >= 2")
    q = fixture(FixtureId.Q52)
    q2 = iterate(q, 2)

    blocks = _family5_blocks(n)
    tables = {2: q, 3: q2}
    if len(blocks) == 1:
        base = tables[blocks[0]]
    else:
        base = iterate(q, len(blocks) - 1)
        for pos in range(len(blocks), 0, -1):
            base = superpose(base, pos, tables[blocks[pos - 1]])

    d_sets = (frozenset(_D0), frozenset(_D1))
    t01 = [frozenset((x0,) + c for x0 in (0, 1) for c in d) for d in d_sets]
    low_cells = frozenset(
        x for x in itertools.product(range(5), repeat=3)
        if q2.values[q2.index(x)] in (0, 1))
    t_sets = (t01[0], t01[1], low_cells - t01[0] - t01[1])

    options = [d_sets if b == 2 else t_sets for b in blocks]
    comps = []
    for combo in itertools.product(*options):
        cells = [()]
        for part in combo:
            cells = [acc + c for acc in cells for c in sorted(part)]
        comps.append(analysis.component_from_tuples(cells, 0, 1))
    return CountingFamily(base, tuple(comps), len(comps))


def build_family_k(n, k):
    """Disjoint switching sets on an order-k table, k >= 7 odd, 3 not | k.

    The binary base g is the axis-1 inverse of build_ptq(k); it has
    floor(k/2) components for each value pair {2j,2j+1} (the square ones are
    known in closed form, the leftover one is discovered).  Each component
    lifts through every extra argument by prefixing a two-element row set,
    for floor(k/2)*floor(k/3)^(n-1) pairwise disjoint sets in total.
    """
    if n < 2:
        raise ConstructionError("need arity >= 2")
    g = inverse_along(build_ptq(k), 1)
    npairs = k // 3

    level = []  # (pair index j, cells as frozenset of coordinate tuples)
    for j in range(npairs):
        found = analysis.find_components(g, 2 * j, 2 * j + 1)
        squares = set()
        for i in range(k // 2 - 1):
            rows = ((2 * i + 3 * j) % k, (2 * i + 3 * j + 1) % k)
            squares.add(frozenset(
                (x, y) for x in rows for y in (2 * i, 2 * i + 1)))
        found_sets = [frozenset(c.coords for c in comp.cells) for comp in found]
        if len(found_sets) != k // 2:
            raise ConstructionError(
                "expected %d components for pair {%d,%d}, found %d"
                % (k // 2, 2 * j, 2 * j + 1, len(found_sets)))
        for sq in squares:
            if sq not in found_sets:
                raise ConstructionError(
                    "analytic square block is not a component at k=%d" % k)
        level.extend((j, cells) for cells in found_sets)

    for _ in range(n - 2):
        lifted = []
        for j1 in range(npairs):
            for j2, cells in level:
                prefix = ((2 * j2 + 3 * j1) % k, (2 * j2 + 3 * j1 + 1) % k)
                lifted.append(
                    (j1, frozenset((p,) + c for p in prefix for c in cells)))
        level = lifted

    comps = tuple(
        analysis.component_from_tuples(cells, 2 * j, 2 * j + 1)
        for j, cells in level)
    want = (k // 2) * npairs ** (n - 1)
    if len(comps) != want:
        raise ConstructionError("component count %d, want %d" % (len(comps), want))
    return CountingFamily(iterate(g, n - 1), comps, len(comps))


def _loops(k):
    """All order-k loops (identity row/column 0) in lexicographic row order."""
    rows = [list(range(k))]
    col_used = [{i} for i in range(k)]

    def fill(i, j, row):
        if i == k:
            yield [list(r) for r in rows]
            return
        if j == k:
            rows.append(row)
            yield from fill(i + 1, 0, None)
            rows.pop()
            return
        if j == 0:
            row = [i] + [None] * (k - 1)
            col_used[0].add(i)
            yield from fill(i, 1, row)
            col_used[0].discard(i)
            return
        used = set(row[:j])
        for v in range(k):
            if v in used or v in col_used[j]:
                continue
            row[j] = v
            col_used[j].add(v)
            yield from fill(i, j + 1, row)
            col_used[j].discard(v)
            row[j] = None

    yield from fill(1, 0, None)


def build_shell_counterexample():
    """Two distinct ternary order-5 tables agreeing on the basepoint shell.

    Searches lexicographically for a nonassociative order-5 loop L and
    returns (q, f, loop) with q = L(L(x1,x2),x3) and f = L(x1,L(x2,x3)).
    Both agree wherever some argument is 0 because 0 is the identity of L,
    yet they differ as tables.
    """
    k = 5
    for rows in _loops(k):
        assoc = all(
            rows[rows[x][y]][z] == rows[x][rows[y][z]]
            for x in range(k) for y in range(k) for z in range(k))
        if assoc:
            continue
        loop = from_rows(rows)
        q = superpose(loop, 1, loop)
        f = superpose(loop, 2, loop)
        if q.values != f.values:
            return q, f, loop
    raise ConstructionError("no nonassociative loop found")
