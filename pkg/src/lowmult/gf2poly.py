"""Binary polynomials and residue arithmetic in GF(2)[x]/(P).

Two representations are used throughout the package:

* ``SparsePoly`` stores a strictly increasing tuple of exponents.  This
  is the canonical form for searched multiples, whose degrees can be far
  too large for a dense coefficient vector.
* Field elements (residues modulo the primitive polynomial P of degree
  n) are plain Python ints of at most n bits, bit i holding the
  coefficient of x^i.  0 and 1 are the additive and multiplicative
  identities, and addition is ``^``.

``FieldContext`` owns the modulus.  Construction validates that P is
primitive (irreducibility by the distinct-degree criterion, then the
order test x^(M/p) != 1 for every prime p dividing M = 2^n - 1, using
its own factorization of M) and precomputes the byte tables that make
multiplication and squaring cheap.  Contexts are immutable after
construction and safe to share between threads; all operations here are
pure functions of their inputs.

The degree cap n <= 63 keeps M, logarithms, and centered shifts inside a
signed 64-bit range; multi-word moduli are out of scope.
"""

from __future__ import annotations

import random

from .errors import DegreeOutOfRangeError, NotPrimitiveError, PolyParseError
from .factorint import factorize

MAX_EXPONENT = 2**63 - 1

# Bit-spreading table: byte b -> 16-bit word with b's bits at even
# positions.  Squaring a GF(2) polynomial just spreads its bits.
_SPREAD = tuple(
    sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)
)


class SparsePoly:
    """A binary polynomial stored as its sorted tuple of exponents.

    The exponent tuple is strictly increasing with no duplicates (the
    XOR-canonical form); the zero polynomial is the empty tuple.
    """

    __slots__ = ("exponents",)

    def __init__(self, exponents=()):
        exps = tuple(exponents)
        for a, b in zip(exps, exps[1:]):
            if a >= b:
                raise ValueError("exponents must be strictly increasing")
        if exps:
            if exps[0] < 0:
                raise ValueError("exponents must be non-negative")
            if exps[-1] > MAX_EXPONENT:
                raise ValueError("exponent exceeds 2^63 - 1")
        self.exponents = exps

    @classmethod
    def from_terms(cls, terms) -> "SparsePoly":
        """Build the XOR-canonical polynomial from any exponent iterable.

        Exponents appearing an even number of times cancel out.
        """
        acc: set[int] = set()
        for e in terms:
            if e in acc:
                acc.remove(e)
            else:
                acc.add(e)
        return cls(sorted(acc))

    def weight(self) -> int:
        """Number of nonzero coefficients."""
        return len(self.exponents)

    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return self.exponents[-1] if self.exponents else -1

    def has_constant_term(self) -> bool:
        return bool(self.exponents) and self.exponents[0] == 0

    def is_zero(self) -> bool:
        return not self.exponents

    def to_int(self) -> int:
        """Dense coefficient bitmask (bit i = coefficient of x^i)."""
        v = 0
        for e in self.exponents:
            v |= 1 << e
        return v

    def __xor__(self, other: "SparsePoly") -> "SparsePoly":
        return SparsePoly.from_terms(self.exponents + other.exponents)

    def __eq__(self, other):
        return isinstance(other, SparsePoly) and self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __bool__(self):
        return bool(self.exponents)

    def __str__(self):
        return ",".join(str(e) for e in self.exponents)

    def __repr__(self):
        return f"SparsePoly({list(self.exponents)!r})"


def parse_poly(spec: str) -> SparsePoly:
    """Parse a polynomial spec string into canonical form.

    Two formats are accepted:

    * a comma-separated exponent list, e.g. ``"53,47,...,1,0"`` in any
      order; exponent pairs cancel (XOR semantics), so ``"1,1,0"`` is 1;
    * a hex coefficient mask prefixed ``0x``, bit i = coefficient of x^i.
    """
    s = spec.strip()
    if not s:
        raise PolyParseError("empty polynomial spec")
    if s[:2].lower() == "0x":
        try:
            bits = int(s, 16)
        except ValueError:
            raise PolyParseError(f"bad hex coefficient string: {spec!r}") from None
        return SparsePoly([i for i in range(bits.bit_length()) if (bits >> i) & 1])
    terms = []
    for tok in s.split(","):
        tok = tok.strip()
        if not tok:
            raise PolyParseError(f"empty token in exponent list: {spec!r}")
        try:
            e = int(tok, 10)
        except ValueError:
            raise PolyParseError(f"bad exponent token {tok!r}") from None
        if e < 0:
            raise PolyParseError(f"negative exponent {e}")
        if e > MAX_EXPONENT:
            raise PolyParseError(f"exponent {e} exceeds 2^63 - 1")
        terms.append(e)
    return SparsePoly.from_terms(terms)


def _poly_mod_int(a: int, b: int) -> int:
    """a mod b for dense GF(2) polynomials as ints, b != 0."""
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _poly_gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod_int(a, b)
    return a


class FieldContext:
    """Residue arithmetic modulo a primitive polynomial P of degree n.

    Attributes:
        poly:          the modulus P as a SparsePoly
        n:             degree of P (2..63)
        order:         multiplicative group order M = 2^n - 1
        factorization: prime-power factorization of M, ascending primes
        mask:          (1 << n) - 1
    """

    __slots__ = ("poly", "n", "order", "factorization", "mask", "_p_int", "_red")

    def __init__(self, poly: SparsePoly):
        n = poly.degree()
        if n < 2 or n > 63:
            raise DegreeOutOfRangeError(
                f"modulus degree must be in 2..63, got {n}"
            )
        if not poly.has_constant_term():
            raise NotPrimitiveError("modulus has no constant term (divisible by x)")
        self.poly = poly
        self.n = n
        self.mask = (1 << n) - 1
        self.order = (1 << n) - 1
        self._p_int = poly.to_int()
        self._red = self._build_reduction_tables()
        if not self._is_irreducible():
            raise NotPrimitiveError(f"{poly} is reducible")
        self.factorization = factorize(self.order)
        for p, _ in self.factorization:
            if self.pow(2, self.order // p) == 1:
                raise NotPrimitiveError(
                    f"{poly} is irreducible but x has order < 2^{n} - 1"
                )

    # -- construction helpers -------------------------------------------

    def _build_reduction_tables(self):
        """Byte tables for folding bits at positions >= n back below n.

        table[k][b] == (b << (n + 8k)) mod P.  Products of two reduced
        elements have at most 2n - 1 bits, so k < ceil((n - 1) / 8).
        """
        n, p_int = self.n, self._p_int
        ntables = (n - 1 + 7) // 8 or 1
        # x^(n+j) mod P for j = 0 .. 8*ntables - 1, by repeated shifts.
        xpow = []
        v = p_int ^ (1 << n)  # x^n mod P
        for _ in range(8 * ntables):
            xpow.append(v)
            v <<= 1
            if (v >> n) & 1:
                v ^= p_int
        tables = []
        for k in range(ntables):
            row = []
            for b in range(256):
                acc = 0
                t = b
                i = 0
                while t:
                    if t & 1:
                        acc ^= xpow[8 * k + i]
                    t >>= 1
                    i += 1
                row.append(acc)
            tables.append(tuple(row))
        return tuple(tables)

    def _is_irreducible(self) -> bool:
        # Distinct-degree criterion: P of degree n is irreducible iff
        # gcd(x^(2^i) + x, P) == 1 for all 1 <= i <= n // 2 (a reducible
        # P always has a factor of degree at most n // 2).
        s = 2  # the element x
        for _ in range(self.n // 2):
            s = self.sqr(s)
            if _poly_gcd_int(s ^ 2, self._p_int) != 1:
                return False
        return True

    # -- arithmetic ------------------------------------------------------

    def _reduce(self, v: int) -> int:
        hi = v >> self.n
        if not hi:
            return v
        v &= self.mask
        red = self._red
        k = 0
        while hi:
            v ^= red[k][hi & 0xFF]
            hi >>= 8
            k += 1
        return v

    def mulx(self, a: int) -> int:
        """Multiply a reduced element by x."""
        a <<= 1
        if (a >> self.n) & 1:
            a ^= self._p_int
        return a

    def mul(self, a: int, b: int) -> int:
        """Product of two reduced elements.

        Shift-XOR schoolbook, processed four multiplier bits at a time
        through a small per-call product table; the unreduced product is
        folded once at the end.
        """
        if a < b:
            a, b = b, a
        a2 = a << 1
        a3 = a2 ^ a
        a4 = a2 << 1
        a8 = a4 << 1
        t = (
            0, a, a2, a3, a4, a4 ^ a, a4 ^ a2, a4 ^ a3,
            a8, a8 ^ a, a8 ^ a2, a8 ^ a3,
            a8 ^ a4, a8 ^ a4 ^ a, a8 ^ a4 ^ a2, a8 ^ a4 ^ a3,
        )
        acc = 0
        shift = 0
        while b:
            nib = b & 15
            if nib:
                acc ^= t[nib] << shift
            b >>= 4
            shift += 4
        # inlined _reduce: this is the hottest spot in the package
        n = self.n
        hi = acc >> n
        if not hi:
            return acc
        acc &= self.mask
        red = self._red
        k = 0
        while hi:
            acc ^= red[k][hi & 0xFF]
            hi >>= 8
            k += 1
        return acc

    def sqr(self, a: int) -> int:
        """Square of a reduced element via bit spreading (Frobenius)."""
        acc = 0
        shift = 0
        while a:
            acc |= _SPREAD[a & 0xFF] << shift
            a >>= 8
            shift += 16
        n = self.n
        hi = acc >> n
        if not hi:
            return acc
        acc &= self.mask
        red = self._red
        k = 0
        while hi:
            acc ^= red[k][hi & 0xFF]
            hi >>= 8
            k += 1
        return acc

    def pow(self, a: int, e: int) -> int:
        """a^e for e >= 0, by square-and-multiply."""
        if e == 0:
            return 1
        result = 1
        base = a
        while True:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if not e:
                return result
            base = self.sqr(base)

    def monomial_residue(self, k: int) -> int:
        """x^k mod P in O(log k) multiplications."""
        if k < 0:
            raise ValueError("monomial exponent must be >= 0")
        if k < self.n:
            return 1 << k
        return self.pow(2, k % self.order)

    def power_table(self, limit: int) -> list[int]:
        """[x^0 mod P, ..., x^limit mod P] by an iterated shift chain."""
        out = [0] * (limit + 1)
        v = 1
        for k in range(limit + 1):
            out[k] = v
            v = self.mulx(v)
        return out

    def __repr__(self):
        return f"FieldContext(P={self.poly}, n={self.n})"


def make_context(poly: SparsePoly) -> FieldContext:
    """Validate P and attach the factorization of 2^n - 1.

    Raises DegreeOutOfRangeError unless 2 <= deg P <= 63 and
    NotPrimitiveError when P is reducible or x generates a proper
    subgroup.
    """
    return FieldContext(poly)


def monomial_residue(k: int, ctx: FieldContext) -> int:
    """x^k mod P."""
    return ctx.monomial_residue(k)


def residue(p: SparsePoly, ctx: FieldContext) -> int:
    """p mod P: the XOR of monomial residues over p's exponents."""
    acc = 0
    for e in p.exponents:
        acc ^= ctx.monomial_residue(e)
    return acc


def fe_mul(a: int, b: int, ctx: FieldContext) -> int:
    """Product of two field elements, reduced modulo P."""
    return ctx.mul(a, b)


def verify_multiple(m: SparsePoly, ctx: FieldContext, w: int, D: int) -> bool:
    """Check that m is a nonzero constant-term multiple of P with
    weight <= w and degree <= D."""
    if m.is_zero() or not m.has_constant_term():
        return False
    if m.weight() > w or m.degree() > D:
        return False
    return residue(m, ctx) == 0


def random_primitive_poly(n: int, rng: random.Random) -> SparsePoly:
    """Draw a uniformly random primitive polynomial of degree n.

    Rejection sampling over monic degree-n polynomials with constant
    term 1; at these sizes a few dozen draws suffice.
    """
    if n < 2 or n > 63:
        raise DegreeOutOfRangeError(f"degree must be in 2..63, got {n}")
    while True:
        bits = (1 << n) | (rng.getrandbits(n - 1) << 1) | 1
        poly = SparsePoly([i for i in range(n + 1) if (bits >> i) & 1])
        try:
            make_context(poly)
        except NotPrimitiveError:
            continue
        return poly
