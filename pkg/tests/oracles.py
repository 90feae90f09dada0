"""Deliberately naive reference implementations used as test oracles.

Nothing here imports the package's reduction or classification code.
"""

from fractions import Fraction


def naive_reduce(letters):
    """Free reduction by repeated scanning until no adjacent pair cancels."""
    seq = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            (g, e), (h, f) = seq[i], seq[i + 1]
            if g == h and e == -f:
                del seq[i : i + 2]
                changed = True
                break
    return tuple(seq)


def naive_content(letters):
    return naive_reduce([t for t in letters if isinstance(t[0], int)])


def naive_classes(letters):
    """J0, J+, J- from a reduced letter list, by walking variable positions."""
    vars_ = [t for t in letters if isinstance(t[0], int)]
    j0, jp, jm = set(), set(), set()
    for j in range(1, len(vars_)):
        (a, e), (b, f) = vars_[j - 1], vars_[j]
        if a != b:
            j0.add(j)
        elif e == f:
            jp.add(j)
        else:
            jm.add(j)
    return j0, jp, jm


def perm_compose(*dicts):
    """Product of finite permutations given as dicts, applied left to right."""
    pts = set()
    for d in dicts:
        pts |= set(d) | set(d.values())
    out = {}
    for p in pts:
        q = p
        for d in dicts:
            q = d.get(q, q)
        if q != p:
            out[p] = q
    return out


def perm_inverse(d):
    return {b: a for a, b in d.items()}


def eval_pl_nodes(nodes, t):
    """Evaluate the PL function through sorted ``nodes`` at ``t`` (t within range)."""
    t = Fraction(t)
    for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
        if x0 <= t <= x1:
            return y0 + (y1 - y0) * (t - x0) / (x1 - x0)
    raise ValueError("outside node range")


def laurent_eval(coeffs, x):
    x = Fraction(x)
    return sum((c * x**k for k, c in coeffs.items()), Fraction(0))
