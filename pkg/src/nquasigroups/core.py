"""Dense value tables for n-ary quasigroups and the operations that combine them.

A table of arity n and order k stores all k**n values flat, row-major with
coordinate 1 most significant: index(x_1..x_n) = sum x_i * k**(n-i).
Symbols are always 0..k-1.
"""

import itertools
import json
from dataclasses import dataclass


class StructuralError(ValueError):
    """Malformed table data: wrong length, out-of-range symbol, bad axis."""


# Flipped on by the test suite so every composition operation checks its
# output.  Release paths leave it off; composition is then O(k**n) with no
# validation pass.
DEBUG_VALIDATE = False


@dataclass(frozen=True)
class QTable:
    """Value hypercube of an n-ary operation on {0..k-1}.

    Immutable after construction.  Construction only normalizes; the Latin
    property and even symbol ranges are checked by validate(), so that
    broken tables can exist as values to be reported on.
    """

    arity: int
    order: int
    values: tuple

    def __post_init__(self):
        if not isinstance(self.arity, int) or self.arity < 1:
            raise StructuralError("arity must be an integer >= 1")
        if not isinstance(self.order, int) or self.order < 1:
            raise StructuralError("order must be an integer >= 1")
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))

    def index(self, coords):
        """Flat index of a coordinate tuple; coordinate 1 most significant."""
        idx = 0
        for c in coords:
            idx = idx * self.order + c
        return idx

    def coords(self, idx):
        """Inverse of index()."""
        out = [0] * self.arity
        for pos in range(self.arity - 1, -1, -1):
            idx, out[pos] = divmod(idx, self.order)
        return tuple(out)

    def cells(self):
        """All coordinate tuples in index order."""
        return itertools.product(range(self.order), repeat=self.arity)

    def rows(self):
        """Nested list view, binary tables only."""
        if self.arity != 2:
            raise StructuralError("rows() is defined for binary tables")
        k = self.order
        return [list(self.values[i * k:(i + 1) * k]) for i in range(k)]


@dataclass(frozen=True)
class Cell:
    """A coordinate tuple into some table."""

    coords: tuple

    def __post_init__(self):
        if not isinstance(self.coords, tuple):
            object.__setattr__(self, "coords", tuple(self.coords))


@dataclass(frozen=True)
class OmegaMap:
    """Assignment of one inner table of order s to every outer cell.

    assignment maps each tuple in {0..r-1}**n to a QTable of arity n and
    order s.  Used by omega_product to build tables of order r*s.
    """

    outer_order: int
    inner_order: int
    arity: int
    assignment: dict

    def check(self):
        r, s, n = self.outer_order, self.inner_order, self.arity
        for y in itertools.product(range(r), repeat=n):
            t = self.assignment.get(y)
            if t is None:
                raise StructuralError("omega map misses block %r" % (y,))
            if t.arity != n or t.order != s:
                raise StructuralError(
                    "omega block %r has shape (%d,%d), want (%d,%d)"
                    % (y, t.arity, t.order, n, s))


@dataclass(frozen=True)
class LineViolation:
    axis: int      # 1-based
    fixed: tuple   # length n, None at the free axis


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple = ()


def _check_structure(t):
    k, n = t.order, t.arity
    if len(t.values) != k ** n:
        raise StructuralError(
            "values length %d, want %d" % (len(t.values), k ** n))
    for v in t.values:
        if not isinstance(v, int) or not 0 <= v < k:
            raise StructuralError("symbol %r out of range 0..%d" % (v, k - 1))


def _lines(n, k):
    """Yield (axis, base_index, stride) for every axis line of a k**n cube."""
    for ax in range(n):  # 0-based here; reported 1-based
        stride = k ** (n - 1 - ax)
        block = stride * k
        for hi in range(k ** ax):
            top = hi * block
            for lo in range(stride):
                yield ax, top + lo, stride


def validate(t):
    """Check the Latin property on every axis line.

    Returns a ValidationReport listing all violated lines (first entry is
    the first offending axis in scan order).  Structural problems, wrong
    length or out-of-range symbols, raise StructuralError instead: they are
    not Latin violations.
    """
    _check_structure(t)
    k, n = t.order, t.arity
    vals = t.values
    violations = []
    for ax, base, stride in _lines(n, k):
        mask = 0
        for j in range(k):
            mask |= 1 << vals[base + j * stride]
        if mask != (1 << k) - 1:
            fixed = list(t.coords(base))
            fixed[ax] = None
            violations.append(LineViolation(ax + 1, tuple(fixed)))
    return ValidationReport(not violations, tuple(violations))


def is_valid(t):
    return validate(t).ok


def _debug_check(t, opname):
    if DEBUG_VALIDATE:
        rep = validate(t)
        if not rep.ok:
            raise AssertionError(
                "%s produced an invalid table: %r" % (opname, rep.violations[0]))
    return t


def evaluate(t, x):
    """Value of t at cell x (a Cell or a plain coordinate tuple)."""
    coords = x.coords if isinstance(x, Cell) else tuple(x)
    if len(coords) != t.arity:
        raise StructuralError(
            "cell has %d coordinates, table arity is %d" % (len(coords), t.arity))
    for c in coords:
        if not isinstance(c, int) or not 0 <= c < t.order:
            raise StructuralError("coordinate %r out of range 0..%d" % (c, t.order - 1))
    return t.values[t.index(coords)]


def from_function(arity, order, fn):
    """Materialize fn over all coordinate tuples into a QTable."""
    vals = [fn(*x) for x in itertools.product(range(order), repeat=arity)]
    return QTable(arity, order, tuple(vals))


def from_rows(rows):
    """Binary QTable from a nested list, row = first argument."""
    k = len(rows)
    flat = []
    for row in rows:
        if len(row) != k:
            raise StructuralError("rows of a binary table must have length %d" % k)
        flat.extend(row)
    return QTable(2, k, tuple(flat))


def inverse_along(t, i):
    """Invert t in its i-th argument (1-based).

    The result t' satisfies t'(.., z at i, ..) = x_i whenever t(.., x_i, ..) = z.
    Requires t to be Latin along axis i; raises StructuralError otherwise.
    """
    n, k = t.arity, t.order
    if not 1 <= i <= n:
        raise StructuralError("axis %r out of range 1..%d" % (i, n))
    ax = i - 1
    stride = k ** (n - 1 - ax)
    out = [None] * len(t.values)
    for idx, z in enumerate(t.values):
        xi = (idx // stride) % k
        out[idx + (z - xi) * stride] = xi
    if any(v is None for v in out):
        raise StructuralError("table is not Latin along axis %d" % i)
    return _debug_check(QTable(n, k, tuple(out)), "inverse_along")


def retract(t, fixed):
    """Fix some arguments to constants; fixed maps 1-based axis to symbol."""
    n, k = t.arity, t.order
    for ax, sym in fixed.items():
        if not 1 <= ax <= n:
            raise StructuralError("axis %r out of range 1..%d" % (ax, n))
        if not 0 <= sym < k:
            raise StructuralError("symbol %r out of range 0..%d" % (sym, k - 1))
    free = [ax for ax in range(1, n + 1) if ax not in fixed]
    if not free:
        raise StructuralError("retract must leave at least one axis free")
    full = [0] * n
    for ax, sym in fixed.items():
        full[ax - 1] = sym
    vals = []
    for x in itertools.product(range(k), repeat=len(free)):
        for ax, c in zip(free, x):
            full[ax - 1] = c
        vals.append(t.values[t.index(full)])
    return _debug_check(QTable(len(free), k, tuple(vals)), "retract")


def superpose(outer, position, inner):
    """Plug inner into argument slot `position` (1-based) of outer.

    The slot expands in place, so the result's axes are outer's axes with
    axis `position` replaced by all of inner's axes.
    """
    if outer.order != inner.order:
        raise StructuralError(
            "order mismatch: %d vs %d" % (outer.order, inner.order))
    if not 1 <= position <= outer.arity:
        raise StructuralError(
            "position %r out of range 1..%d" % (position, outer.arity))
    k = outer.order
    n_out = outer.arity
    post = k ** (n_out - position)
    vals = []
    outer_vals, inner_vals = outer.values, inner.values
    for pre in range(k ** (position - 1)):
        pre_base = pre * k
        for v in inner_vals:
            base = (pre_base + v) * post
            vals.extend(outer_vals[base:base + post])
    t = QTable(n_out + inner.arity - 1, k, tuple(vals))
    return _debug_check(t, "superpose")


def iterate(q, m):
    """Right-nested m-fold self-superposition of a binary table, arity m+1."""
    if q.arity != 2:
        raise StructuralError("iterate needs a binary table")
    if m < 1:
        raise StructuralError("iterate needs m >= 1")
    t = q
    for _ in range(m - 1):
        t = superpose(q, 2, t)
    return t


def direct_product(g, q):
    """Componentwise product; symbol pairs (a, b) encode as a*q.order + b."""
    if g.arity != q.arity:
        raise StructuralError("arity mismatch: %d vs %d" % (g.arity, q.arity))
    n = g.arity
    kg, kq = g.order, q.order
    kk = kg * kq
    vals = []
    for x in itertools.product(range(kk), repeat=n):
        a = tuple(c // kq for c in x)
        b = tuple(c % kq for c in x)
        vals.append(g.values[g.index(a)] * kq + q.values[q.index(b)])
    return _debug_check(QTable(n, kk, tuple(vals)), "direct_product")


def omega_product(g, om):
    """Block product of order r*s from an order-r skeleton g.

    f(z) = g(floor(z/s)) * s + om<floor(z/s)>(z mod s), coordinatewise.
    Distinct assignments om give distinct results.
    """
    if not isinstance(om, OmegaMap):
        raise StructuralError("second argument must be an OmegaMap")
    if om.outer_order != g.order or om.arity != g.arity:
        raise StructuralError("omega map does not match the outer table")
    om.check()
    n, r, s = g.arity, om.outer_order, om.inner_order
    kk = r * s
    vals = []
    for z in itertools.product(range(kk), repeat=n):
        y = tuple(c // s for c in z)
        x = tuple(c % s for c in z)
        inner = om.assignment[y]
        vals.append(g.values[g.index(y)] * s + inner.values[inner.index(x)])
    return _debug_check(QTable(n, kk, tuple(vals)), "omega_product")


def restrict_to_symbols(t, omega):
    """Restriction of t to a symbol subset, relabeled to 0..len(omega)-1.

    Raises StructuralError if t maps omega**n outside omega (not closed).
    """
    omega = tuple(sorted(set(omega)))
    pos = {sym: i for i, sym in enumerate(omega)}
    n = t.arity
    vals = []
    for x in itertools.product(omega, repeat=n):
        v = t.values[t.index(x)]
        if v not in pos:
            raise StructuralError(
                "table is not closed on %r: value %d at %r" % (omega, v, x))
        vals.append(pos[v])
    return QTable(n, len(omega), tuple(vals))


# ---------------------------------------------------------------------------
# file formats

def to_json_obj(t):
    return {"arity": t.arity, "order": t.order, "values": list(t.values)}


def from_json_obj(obj):
    if not isinstance(obj, dict):
        raise StructuralError("table JSON must be an object")
    try:
        arity, order, values = obj["arity"], obj["order"], obj["values"]
    except KeyError as e:
        raise StructuralError("table JSON misses field %s" % e)
    if not isinstance(values, list):
        raise StructuralError("values must be a list")
    return QTable(int(arity), int(order), tuple(int(v) for v in values))


def to_json(t):
    return json.dumps(to_json_obj(t))


def from_json(s):
    try:
        obj = json.loads(s)
    except json.JSONDecodeError as e:
        raise StructuralError("bad table JSON: %s" % e)
    return from_json_obj(obj)


def to_text(t):
    """k lines of k space-separated integers; binary tables only."""
    if t.arity != 2:
        raise StructuralError("text format covers binary tables only")
    return "\n".join(" ".join(str(v) for v in row) for row in t.rows()) + "\n"


def from_text(s):
    lines = [ln for ln in s.splitlines() if ln.strip()]
    k = len(lines)
    if k == 0:
        raise StructuralError("empty text table")
    rows = []
    for ln in lines:
        try:
            row = [int(w) for w in ln.split()]
        except ValueError:
            raise StructuralError("non-integer entry in text table")
        if len(row) != k:
            raise StructuralError(
                "text table is not square: %d lines, row of %d" % (k, len(row)))
        rows.append(row)
    return from_rows(rows)
