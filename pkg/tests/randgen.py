"""Seeded random quasigroups for tests.

Binary tables come from the Jacobson-Matthews walk on the 0/1 incidence
cube (with the standard single improper -1 cell allowed mid-walk), which
mixes to approximately uniform Latin squares.  Higher arities are built
by superposing random binary tables, so reducibility witnesses are known
by construction.
"""

import random

from nquasigroups import core


def random_latin_square(k, rng):
    """Approximately uniform random order-k Latin square as a QTable."""
    if k == 1:
        return core.from_rows([[0]])
    # incidence cube: cube[r][c][s] == 1 iff square[r][c] == s
    cube = [[[1 if s == (r + c) % k else 0 for s in range(k)]
             for c in range(k)] for r in range(k)]
    improper = None  # (r, c, s) of the single -1 entry, if any
    steps = 20 * k ** 3
    done = 0
    while done < steps or improper is not None:
        done += 1
        if improper is None:
            r = rng.randrange(k)
            c = rng.randrange(k)
            s = rng.randrange(k)
            while cube[r][c][s] == 1:
                r = rng.randrange(k)
                c = rng.randrange(k)
                s = rng.randrange(k)
        else:
            r, c, s = improper
        # the 1-entries forming the exchange box
        r2 = rng.choice([i for i in range(k) if cube[i][c][s] == 1])
        c2 = rng.choice([j for j in range(k) if cube[r][j][s] == 1])
        s2 = rng.choice([z for z in range(k) if cube[r][c][z] == 1])
        cube[r][c][s] += 1
        cube[r2][c][s] -= 1
        cube[r][c2][s] -= 1
        cube[r][c][s2] -= 1
        cube[r2][c2][s] += 1
        cube[r2][c][s2] += 1
        cube[r][c2][s2] += 1
        cube[r2][c2][s2] -= 1
        improper = (r2, c2, s2) if cube[r2][c2][s2] == -1 else None
    rows = [[next(s for s in range(k) if cube[r][c][s] == 1)
             for c in range(k)] for r in range(k)]
    return core.from_rows(rows)


def random_binary(k, seed):
    return random_latin_square(k, random.Random(seed))


def random_reducible(n, k, seed):
    """Random arity-n table reducible w.r.t. a known split.

    Returns (table, split_axes): outer is a random arity n - m + 1 table
    built by repeated superposition, inner a random binary table placed
    at a random position, so the table decomposes over the m inner axes.
    """
    rng = random.Random(seed)
    outer = random_latin_square(k, rng)
    for _ in range(n - 3):
        pos = rng.randrange(1, outer.arity + 1)
        outer = core.superpose(outer, pos, random_latin_square(k, rng))
    inner = random_latin_square(k, rng)
    pos = rng.randrange(1, outer.arity + 1)
    t = core.superpose(outer, pos, inner)
    return t, (pos, pos + 1)
