"""Independent reference computations used to cross-check the library.

None of these import the code under test except for trivial helpers, so
agreement is evidence rather than tautology.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath


def brute_class_number(D: int) -> int:
    """Count primitive reduced positive definite forms of discriminant D < 0 by direct search."""
    count = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            count += 1
        a += 1
    return count


def _jacobi(a: int, n: int) -> int:
    # textbook Jacobi symbol for odd positive n
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _chi(D: int, n: int) -> int:
    """Kronecker character of D at a positive integer n, via multiplicativity."""
    out = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        out *= 1 if D % 8 in (1, 7) else -1
    return out * _jacobi(D, n) if n > 1 else out


def dirichlet_class_number(D: int) -> int:
    """Class number of a fundamental D < 0 from the analytic class number formula."""
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(_chi(D, a) * a for a in range(1, -D))
    h = Fraction(-w * s, 2 * -D)
    assert h.denominator == 1
    return int(h)


def _v(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def conic_solvable_padic(c: int, p: int, depth: int = 6) -> bool | None:
    """Tree search for a Q_p-point on x^2 + y^2 + c z^2 = 0.

    Primitive solutions modulo p^j are lifted level by level; a solution
    where some partial derivative has 2*v < j lifts by Hensel's lemma. An
    empty level proves there is no point. Returns None if undecided.
    """

    def f(x, y, z):
        return x * x + y * y + c * z * z

    def grads(x, y, z):
        return (2 * x, 2 * y, 2 * c * z)

    # normalizations: x = 1; x = 0 mod p, y = 1; x = y = 0 mod p, z = 1
    shapes = [(1, None, None), (0, 1, None), (0, 0, 1)]
    level = []
    for fixed in shapes:
        free = [i for i, want in enumerate(fixed) if want is None]
        for vals in _product(range(p), len(free)):
            cand = [1 if want == 1 else 0 for want in fixed]
            for i, v in zip(free, vals):
                cand[i] = v
            if f(*cand) % p == 0:
                level.append((tuple(cand), fixed))
    mod = p
    for j in range(1, depth + 1):
        if not level:
            return False
        for (x, y, z), _ in level:
            if any(2 * _v(g % mod, p) < j and g % mod != 0 for g in grads(x, y, z)):
                return True
        if j == depth:
            return None
        nxt = []
        new_mod = mod * p
        for (x, y, z), fixed in level:
            free = [i for i, want in enumerate(fixed) if want != 1]
            for shifts in _product(range(p), len(free)):
                cand = [x, y, z]
                for i, s in zip(free, shifts):
                    cand[i] = cand[i] + mod * s
                if f(*cand) % new_mod == 0:
                    nxt.append((tuple(cand), fixed))
        level = nxt
        mod = new_mod
    return None


def _product(rng, n):
    if n == 0:
        yield ()
        return
    for head in rng:
        for tail in _product(rng, n - 1):
            yield (head,) + tail


def quadratic_embedding_norm(m: int, alpha: tuple, eps: tuple, a: int, q: int, e: int, root_sign: int = 1, dps: int = 0):
    """Norm of alpha^eps - beta^e via complex embeddings, as an mpmath interval.

    ``alpha = (x, y)`` means x + y*sqrt(m); eps = (a_id, a_conj). When
    a^2 - 4q = m t^2 for rational t, beta lies in the field and only the
    root selected by ``root_sign`` is used.
    """
    iv = mpmath.iv
    digits = 40 + int(sum(eps) * math.log10(max(abs(float(alpha[0])) + abs(float(alpha[1])) * math.sqrt(abs(m)), 2)) * 4)
    digits += int(e * math.log10(q) * 4) + dps
    iv.dps = digits
    sm = iv.sqrt(iv.mpf(abs(m)))
    sqrt_m = iv.mpc(0, sm) if m < 0 else iv.mpc(sm, 0)
    x, y = (iv.mpf(Fraction(t).numerator) / Fraction(t).denominator for t in alpha)
    emb = [x + y * sqrt_m, x - y * sqrt_m]
    a_id, a_conj = eps
    gammas = [emb[0] ** a_id * emb[1] ** a_conj, emb[1] ** a_id * emb[0] ** a_conj]
    disc = a * a - 4 * q
    t2 = Fraction(disc, m)
    in_field = t2 > 0 and _is_rational_square(t2)
    total = iv.mpc(1, 0)
    if in_field:
        t = _rational_sqrt(t2)
        tt = iv.mpf(t.numerator) / t.denominator
        for sign, g in zip((1, -1), gammas):
            beta = (-a + root_sign * sign * tt * sqrt_m) / 2
            total *= g - beta**e
    else:
        sd = iv.sqrt(iv.mpf(-disc))
        roots = [iv.mpc(-a, sd) / 2, iv.mpc(-a, -sd) / 2]
        for g in gammas:
            for beta in roots:
                total *= g - beta**e
    return total


def _is_rational_square(r: Fraction) -> bool:
    return math.isqrt(r.numerator) ** 2 == r.numerator and math.isqrt(r.denominator) ** 2 == r.denominator


def _rational_sqrt(r: Fraction) -> Fraction:
    return Fraction(math.isqrt(r.numerator), math.isqrt(r.denominator))


def integers_in(interval) -> list[int]:
    """Integers inside a real mpmath interval (imaginary part must straddle 0)."""
    re, im = interval.real, interval.imag
    assert im.a <= 0 <= im.b, "imaginary part does not contain zero"
    with mpmath.mp.workdps(mpmath.iv.dps):
        lo = int(mpmath.ceil(mpmath.mpf(re.a)))
        hi = int(mpmath.floor(mpmath.mpf(re.b)))
    return list(range(lo, hi + 1))
