"""Independent reference implementations used only by the tests.

None of these import fusionkit; they are deliberately slow and literal.
"""
from collections import Counter
from itertools import product


def gt_character(sig):
    """Character of V_sig as a Counter exponent-tuple -> multiplicity.

    Sums over Gelfand-Tsetlin patterns with top row ``sig``; the weight of a
    pattern is the vector of successive row-sum differences.
    """
    sig = tuple(sig)
    N = len(sig)
    out = Counter()

    def below(row):
        # all rows of length len(row) - 1 interlacing row
        ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
        return product(*ranges)

    def rec(rows):
        row = rows[-1]
        if len(row) == 1:
            sums = [sum(r) for r in reversed(rows)]
            weight = [sums[0]] + [sums[k] - sums[k - 1] for k in range(1, N)]
            out[tuple(weight)] += 1
            return
        for nxt in below(row):
            rec(rows + [tuple(nxt)])

    rec([sig])
    return out


def poly_mul(p, q):
    out = Counter()
    for a, m in p.items():
        for b, n in q.items():
            out[tuple(x + y for x, y in zip(a, b))] += m * n
    return out


def peel(poly):
    """Decompose a symmetric polynomial into characters by removing dominant terms."""
    poly = Counter({k: v for k, v in poly.items() if v})
    result = Counter()
    while poly:
        top = max(poly)   # lexicographically largest exponent is dominant
        assert all(a >= b for a, b in zip(top, top[1:])), top
        c = poly[top]
        result[top] += c
        for k, v in gt_character(top).items():
            poly[k] -= c * v
            if poly[k] == 0:
                del poly[k]
    return result


def tensor_oracle(f, g):
    """Classical V_f (x) V_g by character multiplication and peeling, normalized keys."""
    res = peel(poly_mul(gt_character(f), gt_character(g)))
    out = Counter()
    for h, m in res.items():
        out[tuple(x - h[-1] for x in h)] += m
    return dict(out)


def su2_fold(a, b, level):
    """SU(2) level-l fusion by Clebsch-Gordan then folding c+1 into (0, level+2)."""
    kappa = level + 2
    out = Counter()
    for c in range(abs(a - b), a + b + 1, 2):
        m = (c + 1) % (2 * kappa)
        if m == 0 or m == kappa:
            continue
        if m < kappa:
            out[m - 1] += 1
        else:
            out[2 * kappa - m - 1] -= 1
    return {c: m for c, m in out.items() if m}


def su2_closed_form(a, b, level):
    return {c: 1 for c in range(level + 1)
            if abs(a - b) <= c <= min(a + b, 2 * level - a - b) and (c - a - b) % 2 == 0}


def brute_chains(f, g, level=None):
    """All chains from f to g adding one box at a time; brute force over row orders."""
    f, g = tuple(f), tuple(g)
    diff = [b - a for a, b in zip(f, g)]
    if any(d < 0 for d in diff):
        return []
    rows = [i for i, d in enumerate(diff) for _ in range(d)]
    chains = set()

    def ok(s):
        return all(x >= y for x, y in zip(s, s[1:])) and (level is None or s[0] - s[-1] <= level)

    from itertools import permutations
    for order in set(permutations(rows)):
        cur = list(f)
        chain = [tuple(cur)]
        good = ok(cur)
        for r in order:
            cur[r] += 1
            good = good and ok(cur)
            chain.append(tuple(cur))
        if good:
            chains.add(tuple(chain))
    return sorted(chains)
