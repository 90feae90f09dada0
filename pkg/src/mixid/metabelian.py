"""Membership in the second derived subgroup of F_2 via the Magnus embedding.

F_2 / F_2'' embeds into 2x2 matrices ``[[a, t], [0, 1]]`` where ``a`` is a
monomial in the commuting symbols A, B and ``t`` lies in the free module of
rank 2 over Z[A^+-1, B^+-1]:

    x -> [[A, e_x], [0, 1]],    y -> [[B, e_y], [0, 1]]

A word lies in F_2'' exactly when its image is the identity matrix.
"""

from __future__ import annotations

from .words import FreeWord

Poly2 = dict  # (i, j) -> int, exponents of A and B


def _add(p: Poly2, mono: tuple, coeff: int) -> None:
    v = p.get(mono, 0) + coeff
    if v:
        p[mono] = v
    else:
        p.pop(mono, None)


def magnus_image(u: FreeWord) -> tuple:
    """Return ``(monomial, t_x, t_y)`` for the matrix image of ``u``.

    Products are read left to right: ``[[a1, t1], [0, 1]] [[a2, t2], [0, 1]]
    = [[a1 a2, a1 t2 + t1], [0, 1]]``.
    """
    a = (0, 0)
    tx: Poly2 = {}
    ty: Poly2 = {}
    for g, e in u.letters:
        if g not in (1, 2):
            raise ValueError("metabelian image is defined for two variables only")
        step = (1, 0) if g == 1 else (0, 1)
        target = tx if g == 1 else ty
        if e == 1:
            # t += a * e_g ; a *= step
            _add(target, a, 1)
            a = (a[0] + step[0], a[1] + step[1])
        else:
            # generator inverse is [[s^-1, -s^-1 e_g], [0, 1]]
            a = (a[0] - step[0], a[1] - step[1])
            _add(target, a, -1)
    return a, dict(sorted(tx.items())), dict(sorted(ty.items()))


def is_in_second_derived(u: FreeWord) -> bool:
    a, tx, ty = magnus_image(u)
    return a == (0, 0) and not tx and not ty


def is_in_derived(u: FreeWord) -> bool:
    return not any(u.abelianization(2))

