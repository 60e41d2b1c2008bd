"""Arithmetic over F_p and its quadratic extensions.

Everything works on plain Python integers: a field element is an int reduced
mod p, and the modulus travels alongside it.  The quadratic extension
F_p[T]/(T^2 - delta) gets a small value class (`Fp2`) because its elements are
pairs and the multiplication rule depends on delta.

Factoring is trial division up to a fixed bound with a deterministic
Brent-cycle rho for what survives; primality is deterministic Miller-Rabin
for anything below 3.3e24, which covers every modulus this package touches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional

from .errors import DomainError

# Witnesses that make Miller-Rabin deterministic for n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 1_000_000


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed witnesses; deterministic below 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_odd_prime(p: int) -> int:
    """Validate a modulus for this package: a prime strictly above 3."""
    if not isinstance(p, int) or p <= 3 or not is_probable_prime(p):
        raise DomainError(f"modulus must be a prime greater than 3, got {p!r}")
    return p


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Canonical square root of a mod p, or None for a non-residue.

    Canonical means the smaller of the two roots (so the result is in
    [0, p/2]); callers that need both take p - r themselves.
    Tonelli-Shanks, with the p = 3 (mod 4) shortcut.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # Write p - 1 = q * 2^s with q odd, then walk the 2-Sylow subgroup.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


def _brent_rho(n: int) -> int:
    """One nontrivial factor of composite odd n, deterministic parameter sweep."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                g = math.gcd(q, n)
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho parameter sweep exhausted on {n}")


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization as {prime: exponent}; factorize(1) == {}."""
    if n < 1:
        raise ValueError("factorize wants a positive integer")
    out: Dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    f = 5
    while f <= _TRIAL_BOUND and f * f <= n:
        for q in (f, f + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        f += 6
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.extend((d, m // d))
    return out


def tau(n: int) -> int:
    """Number of divisors."""
    return math.prod(e + 1 for e in factorize(n).values())


def phi(n: int) -> int:
    """Euler totient."""
    out = n
    for q in factorize(n):
        out = out // q * (q - 1)
    return out


def mult_order(a: int, p: int, factored_group: Optional[Dict[int, int]] = None) -> int:
    """Multiplicative order of a in F_p^*.

    Pass factorize(p - 1) as factored_group when calling in a loop.
    """
    a %= p
    if a == 0:
        raise DomainError("0 has no multiplicative order")
    n = p - 1
    if factored_group is None:
        factored_group = factorize(n)
    d = n
    for q in factored_group:
        while d % q == 0 and pow(a, d // q, p) == 1:
            d //= q
    return d


@dataclass(frozen=True)
class Fp2:
    """Element a + b*T of F_p[T]/(T^2 - delta), delta a non-residue mod p."""

    a: int
    b: int
    delta: int
    p: int

    def __mul__(self, other: "Fp2") -> "Fp2":
        p, d = self.p, self.delta
        return Fp2(
            (self.a * other.a + self.b * other.b % p * d) % p,
            (self.a * other.b + self.b * other.a) % p,
            d,
            p,
        )

    def conj(self) -> "Fp2":
        return Fp2(self.a, (-self.b) % self.p, self.delta, self.p)

    def norm(self) -> int:
        """a^2 - delta*b^2, the norm down to F_p."""
        return (self.a * self.a - self.delta * self.b * self.b) % self.p

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    @classmethod
    def one(cls, delta: int, p: int) -> "Fp2":
        return cls(1, 0, delta, p)

    def pow(self, n: int) -> "Fp2":
        if n < 0:
            # Only used on norm-1 elements, where the inverse is the conjugate.
            if self.norm() != 1:
                raise ValueError("negative powers only supported for norm-1 elements")
            return self.conj().pow(-n)
        out = Fp2.one(self.delta, self.p)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def fp2_mult_order(x: Fp2, group_order: int, factored_group: Dict[int, int]) -> int:
    """Order of x inside a subgroup of F_{p^2}^* of known order."""
    if not x.pow(group_order).is_one():
        raise DomainError("element does not lie in the stated subgroup")
    d = group_order
    for q in factored_group:
        while d % q == 0 and x.pow(d // q).is_one():
            d //= q
    return d
