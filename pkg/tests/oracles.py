"""Independent reference computations used only by the tests.

Each oracle takes a different route from the library: floating eigenvalues
at high precision instead of certified sign counting, brute force over F_2
instead of a symplectic basis, plain fractions instead of angle forms.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath
import sympy


def signature_oracle(A, turn: Fraction, dps: int = 100, neg: bool = False):
    """Eigenvalue count of (1-w)A + (1-conj w)A^T at w = exp(+-2 pi i turn).

    Returns (signature, min |eigenvalue|).
    """
    with mpmath.workdps(dps):
        n = len(A)
        ang = 2 * mpmath.pi * mpmath.mpf(turn.numerator) / turn.denominator
        if neg:
            ang = -ang
        w = mpmath.exp(1j * ang)
        H = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                H[i, j] = (1 - w) * A[i][j] + (1 - mpmath.conj(w)) * A[j][i]
        ev = mpmath.eighe(H, eigvals_only=True)
        pos = sum(1 for e in ev if e > 0)
        negc = sum(1 for e in ev if e < 0)
        return pos - negc, min(abs(e) for e in ev)


def arf_bruteforce(A) -> int:
    """Majority value of q(x) = x^T A x mod 2 over all of F_2^n."""
    n = len(A)
    ones = 0
    for x in itertools.product((0, 1), repeat=n):
        ones += sum(x[i] * A[i][j] * x[j] for i in range(n) for j in range(n)) % 2
    return 1 if ones > 2 ** (n - 1) else 0


def det_fraction(M) -> Fraction:
    """Gaussian elimination over Q."""
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            for k in range(c, n):
                M[r][k] -= f * M[c][k]
    return det


def alexander_at(A, t) -> Fraction:
    n = len(A)
    return det_fraction([[A[i][j] - t * A[j][i] for j in range(n)] for i in range(n)])


def step_value(jumps, turn: Fraction):
    """Evaluate a rational-jump step function given as [(turn, value_after)].

    Returns None when the point is a jump.
    """
    x = turn % 1
    x = min(x, 1 - x)
    v, real, prev = 0, [], 0
    for t, val in jumps:
        if val != prev:
            real.append((t, val))
            prev = val
    for t, val in real:
        if t == x:
            return None
        if t < x:
            v = val
    return v


def step_pullback_value(jumps, d: int, turn: Fraction):
    return step_value(jumps, d * turn)


def step_average(jumps) -> Fraction:
    """(1/pi) * integral over [0, pi] with breakpoints in turns."""
    pts = [Fraction(0)] + [t for t, _ in jumps] + [Fraction(1, 2)]
    vals = [0] + [v for _, v in jumps]
    return sum(vals[i] * (pts[i + 1] - pts[i]) for i in range(len(vals))) * 2


def roots_sum(jumps, d: int):
    total = 0
    for r in range(d):
        v = step_value(jumps, Fraction(r, d))
        if v is None:
            return None
        total += v
    return total


def gcd_nontrivial_after_substitution(p_dense, q_dense, m: int, n: int) -> bool:
    """sympy gcd of p(t^m) and q(t^n), shifting negative exponents away."""
    t = sympy.Symbol("t")

    def sub(dense, k):
        expr = sum(c * t ** (i * k) for i, c in enumerate(dense))
        if k < 0:
            expr = sympy.expand(expr * t ** (abs(k) * (len(dense) - 1)))
        return sympy.Poly(expr, t)

    g = sympy.gcd(sub(p_dense, m), sub(q_dense, n))
    return g.degree() >= 1
