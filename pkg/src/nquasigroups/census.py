"""Exact enumeration of small quasigroup spaces and certification of the
double-exponential lower-bound families.
"""

import itertools
import math
import random
import time
from dataclasses import dataclass

from . import analysis
from .analysis import switch_component
from .constructions import build_family5, build_family_k
from .core import OmegaMap, QTable, from_function, omega_product, validate

DEFAULT_CELL_BUDGET = 2_000_000
DEFAULT_TIME_LIMIT = 600.0
MATERIALIZE_CAP = 4096


class BudgetError(RuntimeError):
    """Enumeration refused or aborted: too many cells or out of time."""


class CertificationError(RuntimeError):
    """A claimed switching family failed one of its checks."""


@dataclass(frozen=True)
class CensusReport:
    arity: int
    order: int
    exact_count: int | None = None
    bound_exponents: dict | None = None
    family_log2: float | None = None
    elapsed: float = 0.0
    certification: dict | None = None


def report_to_json_obj(rep):
    return {
        "arity": rep.arity,
        "order": rep.order,
        "exact_count": rep.exact_count,
        "bound_exponents": rep.bound_exponents,
        "family_log2": rep.family_log2,
        "elapsed": rep.elapsed,
        "certification": rep.certification,
    }


def _visit_order(n, k, visit):
    total = k ** n
    if visit == "index":
        return list(range(total))
    if visit == "transposed":
        # lexicographic over reversed coordinate tuples
        order = []
        for x in itertools.product(range(k), repeat=n):
            idx = 0
            for c in reversed(x):
                idx = idx * k + c
            order.append(idx)
        return order
    raise ValueError("visit must be 'index' or 'transposed'")


def _cell_lines(n, k, idx):
    """Global line ids (one per axis) of the cell at a flat index."""
    out = []
    block = k ** (n - 1)
    for a in range(n):
        s = k ** (n - 1 - a)
        out.append(a * block + (idx // (s * k)) * s + idx % s)
    return tuple(out)


def _check_budget(n, k, budget):
    total = k ** n
    if total > budget:
        raise BudgetError(
            "table has %d cells, over the %d-cell budget; a search would "
            "touch at least that many nodes" % (total, budget))
    return total


def enumerate_count(n, k, budget=DEFAULT_CELL_BUDGET,
                    time_limit=DEFAULT_TIME_LIMIT, visit="index",
                    reduce_first_line=False):
    """Exact number of n-ary quasigroups of order k, by backtracking.

    Cells are filled in the chosen visitation order with one used-symbol
    bitmask per axis line.  reduce_first_line pins the first visited line
    to the identity and multiplies the result by k!, which counts the same
    set because symbol relabeling acts freely.  Deterministic.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    total = _check_budget(n, k, budget)
    if k == 1:
        return 1
    order = _visit_order(n, k, visit)
    cell_lines = [_cell_lines(n, k, idx) for idx in order]
    full = (1 << k) - 1
    masks = [0] * (n * k ** (n - 1))
    placed = [0] * total
    cand = [0] * total
    deadline = math.inf if time_limit is None else time.monotonic() + time_limit

    start = 0
    multiplier = 1
    if reduce_first_line:
        # the first k visited cells always form a single line
        for pos in range(k):
            b = 1 << pos
            placed[pos] = b
            for lid in cell_lines[pos]:
                masks[lid] |= b
        start = k
        multiplier = math.factorial(k)
        if start == total:
            return multiplier

    count = 0
    last = total - 1
    pos = start
    acc = 0
    for lid in cell_lines[pos]:
        acc |= masks[lid]
    cand[pos] = full & ~acc
    nodes = 0
    while pos >= start:
        m = cand[pos]
        if m == 0:
            pos -= 1
            if pos < start:
                break
            b = placed[pos]
            for lid in cell_lines[pos]:
                masks[lid] ^= b
            continue
        if pos == last:
            # every remaining candidate at the final cell completes a table
            count += m.bit_count()
            cand[pos] = 0
            continue
        b = m & (-m)
        cand[pos] = m ^ b
        placed[pos] = b
        for lid in cell_lines[pos]:
            masks[lid] |= b
        pos += 1
        acc = 0
        for lid in cell_lines[pos]:
            acc |= masks[lid]
        cand[pos] = full & ~acc
        nodes += 1
        if nodes & 0xFFFF == 0 and time.monotonic() > deadline:
            raise BudgetError(
                "time limit exceeded after %d nodes at (n=%d, k=%d)"
                % (nodes, n, k))
    return count * multiplier


def enumerate_tables(n, k, budget=DEFAULT_CELL_BUDGET,
                     time_limit=DEFAULT_TIME_LIMIT, visit="index"):
    """Yield every n-ary quasigroup of order k, in search order."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    total = _check_budget(n, k, budget)
    if k == 1:
        yield QTable(n, 1, (0,) * total)
        return
    order = _visit_order(n, k, visit)
    cell_lines = [_cell_lines(n, k, idx) for idx in order]
    full = (1 << k) - 1
    masks = [0] * (n * k ** (n - 1))
    placed = [0] * total
    cand = [0] * total
    sym = [0] * total
    deadline = math.inf if time_limit is None else time.monotonic() + time_limit

    last = total - 1
    pos = 0
    cand[0] = full
    nodes = 0
    while pos >= 0:
        m = cand[pos]
        if m == 0:
            pos -= 1
            if pos < 0:
                break
            b = placed[pos]
            for lid in cell_lines[pos]:
                masks[lid] ^= b
            continue
        if pos == last:
            while m:
                b = m & (-m)
                m ^= b
                sym[order[pos]] = b.bit_length() - 1
                yield QTable(n, k, tuple(sym))
            cand[pos] = 0
            continue
        b = m & (-m)
        cand[pos] = m ^ b
        placed[pos] = b
        sym[order[pos]] = b.bit_length() - 1
        for lid in cell_lines[pos]:
            masks[lid] |= b
        pos += 1
        acc = 0
        for lid in cell_lines[pos]:
            acc |= masks[lid]
        cand[pos] = full & ~acc
        nodes += 1
        if nodes & 0xFFFF == 0 and time.monotonic() > deadline:
            raise BudgetError(
                "time limit exceeded after %d nodes at (n=%d, k=%d)"
                % (nodes, n, k))


def bound_exponents(n, k):
    """log2 lower bounds on |Q(n,k)| by divisibility class of k.

    even: (k/2)^n when k is even.  div3: n*(k/3)^n when 3 | k.  five: the
    order-5 family size by n mod 3.  general: floor(k/2)*floor(k/3)^(n-1)
    for odd k >= 7 not divisible by 3.  Keys that do not apply are absent.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("arity must be an integer >= 2")
    if not isinstance(k, int) or k < 4:
        raise ValueError("order must be an integer >= 4")
    out = {}
    if k % 2 == 0:
        out["even"] = (k // 2) ** n
    if k % 3 == 0:
        out["div3"] = n * (k // 3) ** n
    if k == 5:
        m, rem = divmod(n, 3)
        if rem == 0:
            out["five"] = 3 ** m
        elif rem == 1:
            out["five"] = 4 * 3 ** (m - 1)
        else:
            out["five"] = 2 * 3 ** m
    if k >= 7 and k % 2 == 1 and k % 3 != 0:
        out["general"] = (k // 2) * (k // 3) ** (n - 1)
    return out


def _certify_components(fam):
    """Check a component family: disjointness, single flips, and (when the
    full set fits the cap) all 2^s switched tables distinct and Latin."""
    comps = fam.components
    s = len(comps)
    if fam.claimed_log2 != s:
        raise CertificationError(
            "family claims log2 = %d but carries %d components"
            % (fam.claimed_log2, s))
    cellsets = [frozenset(c.coords for c in comp.cells) for comp in comps]
    for i in range(s):
        for j in range(i + 1, s):
            if cellsets[i] & cellsets[j]:
                raise CertificationError(
                    "components %d and %d share cells" % (i, j))
    base = fam.base
    for i, comp in enumerate(comps):
        try:
            switch_component(base, comp)
        except analysis.AnalysisError as e:
            raise CertificationError("component %d does not switch: %s" % (i, e))
    cert = {
        "path": "components",
        "component_count": s,
        "pairwise_disjoint": True,
        "flips_valid": True,
        "materialized": 0,
        "distinct": None,
    }
    if 2 ** s <= MATERIALIZE_CAP:
        flips = []
        for comp in comps:
            a, b = sorted(comp.pair)
            flips.append([(base.index(c.coords), a + b) for c in comp.cells])
        seen = set()
        for mask in range(2 ** s):
            vals = list(base.values)
            mm = mask
            ci = 0
            while mm:
                if mm & 1:
                    for idx, ab in flips[ci]:
                        vals[idx] = ab - vals[idx]
                mm >>= 1
                ci += 1
            tv = tuple(vals)
            if tv in seen:
                raise CertificationError(
                    "switch pattern %d duplicates an earlier table" % mask)
            seen.add(tv)
            if not validate(QTable(base.arity, base.order, tv)).ok:
                raise CertificationError(
                    "switch pattern %d is not Latin" % mask)
        cert["materialized"] = 2 ** s
        cert["distinct"] = True
    return s, cert


def _certify_omega(n, k, seed):
    """Certify the block-product family for even k or 3 | k.

    The skeleton is modular addition of order r = k/2 or k/3; every block
    may carry any inner quasigroup of order 2 or 3.  All assignments are
    materialized when they fit the cap, otherwise a seeded sample plus one
    single-block perturbation pair.
    """
    if k % 2 == 0:
        r, s_in = k // 2, 2
    elif k % 3 == 0:
        r, s_in = k // 3, 3
    else:
        raise ValueError("no block family for order %d" % k)
    g = from_function(n, r, lambda *x: sum(x) % r)
    choices = list(enumerate_tables(n, s_in))
    nchoices = len(choices)
    nblocks = r ** n
    if nchoices & (nchoices - 1) == 0:
        family_log2 = nblocks * (nchoices.bit_length() - 1)
    else:
        family_log2 = nblocks * math.log2(nchoices)

    blocks = list(itertools.product(range(r), repeat=n))
    sampled = nchoices ** nblocks > MATERIALIZE_CAP
    if sampled:
        rng = random.Random(seed)
        picks = set()
        while len(picks) < 8:
            picks.add(tuple(rng.randrange(nchoices) for _ in blocks))
        twin = list(min(picks))
        twin[0] = (twin[0] + 1) % nchoices
        picks.add(tuple(twin))
        assignments = sorted(picks)
    else:
        assignments = itertools.product(range(nchoices), repeat=nblocks)

    seen = set()
    made = 0
    for assign in assignments:
        om = OmegaMap(r, s_in, n,
                      {y: choices[c] for y, c in zip(blocks, assign)})
        t = omega_product(g, om)
        if not validate(t).ok:
            raise CertificationError("block product failed validation")
        if t.values in seen:
            raise CertificationError("two block assignments gave one table")
        seen.add(t.values)
        made += 1
    cert = {
        "path": "omega",
        "blocks": nblocks,
        "choices": nchoices,
        "materialized": made,
        "distinct": True,
        "sampled": sampled,
    }
    return family_log2, cert


def verify_family(n, k, seed=0, budget=DEFAULT_CELL_BUDGET):
    """Build and certify the switching family for (n, k); k >= 4.

    Dispatch: order 5 and odd orders >= 7 prime to 3 use component
    families; even orders and multiples of 3 use the block product.  The
    certified family_log2 must reach every applicable exponent from
    bound_exponents, else CertificationError.
    """
    t0 = time.monotonic()
    bounds = bound_exponents(n, k)
    _check_budget(n, k, budget)
    if k == 5:
        family_log2, cert = _certify_components(build_family5(n))
    elif k % 2 == 1 and k % 3 != 0:
        family_log2, cert = _certify_components(build_family_k(n, k))
    else:
        family_log2, cert = _certify_omega(n, k, seed)
    needed = max(bounds.values())
    if family_log2 < needed:
        raise CertificationError(
            "family exponent %s is below the claimed bound %s"
            % (family_log2, needed))
    return CensusReport(n, k, None, bounds, family_log2,
                        time.monotonic() - t0, cert)


_EXACT_AUTO = {(2, 4), (2, 5), (3, 4)}


def run_census(n, k, budget=DEFAULT_CELL_BUDGET, exact="auto",
           time_limit=DEFAULT_TIME_LIMIT, seed=0):
    """Full report for (n, k): exact count when affordable, bounds, family.

    exact='auto' enumerates only the desk-scale cases with known-bounded
    runtimes (any k <= 3 within budget, plus (2,4), (2,5), (3,4));
    'on' forces the attempt, 'off' skips it.
    """
    if exact not in ("auto", "on", "off"):
        raise ValueError("exact must be 'auto', 'on', or 'off'")
    t0 = time.monotonic()
    exact_count = None
    attempt = exact == "on" or (
        exact == "auto" and k ** n <= budget
        and (k <= 3 or (n, k) in _EXACT_AUTO))
    if attempt:
        exact_count = enumerate_count(n, k, budget=budget,
                                      time_limit=time_limit)
    family_log2 = None
    bounds = None
    cert = None
    if k >= 4:
        rep = verify_family(n, k, seed=seed, budget=budget)
        bounds = rep.bound_exponents
        family_log2 = rep.family_log2
        cert = rep.certification
    if exact_count is not None and family_log2 is not None:
        if family_log2 > math.log2(exact_count) + 1e-9:
            raise CertificationError(
                "family of 2^%s tables exceeds the exact count %d"
                % (family_log2, exact_count))
    return CensusReport(n, k, exact_count, bounds, family_log2,
                        time.monotonic() - t0, cert)
