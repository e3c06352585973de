"""Divisor-gap arithmetic: which n admit a gap that splits into two gaps.

For every factorization n = a*b the value |a - b| is a *divisor gap* of n;
D*(n) collects them and D+(n) collects all sums of two nonzero gaps (a gap
may be reused).  n is a *member* when some gap is itself a sum of two
nonzero gaps, i.e. D*(n) and D+(n) intersect.  Unwinding the definition,
membership is exactly the existence of divisors 1 < x < y <= z < sqrt(n)
with n/x - x = (n/y - y) + (n/z - z); such a triple is the witness this
module hands out.

Membership matters elsewhere in the package: the gap sets D*(sigma) govern
which degree differences a split graph's factor multigraph can carry, and
the witness triples seed concrete split constructions (see factorgraph).

Members are closed under multiplication by squares, so every member is
alpha^2 * m for a *primitive* member m (one with no such splitting);
primitive_decomposition finds the canonical one.  generator_polynomial
builds cubic families whose values are eventually all members, and
non_delta_predicates/pqr_check package the factorization patterns that
decide membership without any search.
"""

from __future__ import annotations

import math
from itertools import combinations_with_replacement

from sympy import divisors, factorint, isprime

from .errors import DomainError


def _check_natural(n):
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"expected a positive integer, got {n!r}")


def d_star(n):
    """All gaps |a - b| over factorizations n = a*b.

    max is n - 1 (from 1*n) and 0 appears iff n is a perfect square.
    """
    _check_natural(n)
    return {abs(d - n // d) for d in divisors(n)}


def d_plus(n):
    """All sums of two nonzero gaps of n; reusing the same gap is allowed."""
    gaps = sorted(g for g in d_star(n) if g)
    return {a + b for a, b in combinations_with_replacement(gaps, 2)}


def is_delta_member(n):
    """Raw membership test: some gap of n is a sum of two nonzero gaps."""
    return bool(d_star(n) & d_plus(n))


def _small_divisors(n):
    """Divisors d with 1 < d < sqrt(n), ascending (those with n/d - d > 0)."""
    return [d for d in divisors(n) if 1 < d and d * d < n]


def delta_witness(n):
    """Lexicographically least witness (x, y, z), or None.

    A witness consists of divisors 1 < x < y <= z < sqrt(n) of n with
    n/x - x = (n/y - y) + (n/z - z); one exists iff n is a member.  The
    bounds are forced: gaps from divisors at or above sqrt(n) repeat the
    small-divisor gaps, the gap n - 1 of x = 1 exceeds any two-gap sum,
    and the left side strictly exceeds each summand, so x < y.
    """
    _check_natural(n)
    small = _small_divisors(n)
    gap = {d: n // d - d for d in small}
    for i, x in enumerate(small):
        for y in small[i + 1:]:
            need = gap[x] - gap[y]
            if need > gap[y]:
                break  # gaps shrink as y grows, so need only overshoots more
            # z is determined: n/z - z = need has at most one root
            z = (math.isqrt(need * need + 4 * n) - need) // 2
            if z >= y and z * z < n and n % z == 0 and gap.get(z) == need:
                return (x, y, z)
    return None


class DeltaCertificate:
    """Membership verdict for one n, with the evidence attached.

    For members: a canonical witness triple, the primitivity flag, and the
    square decomposition (alpha, m) with n = alpha^2 * m and m primitive.
    For non-members those fields are None.
    """

    __slots__ = ("n", "member", "witness", "primitive", "decomposition")

    def __init__(self, n, member, witness=None, primitive=None,
                 decomposition=None):
        self.n = n
        self.member = member
        self.witness = witness
        self.primitive = primitive
        self.decomposition = decomposition

    @property
    def verdict(self):
        return "member" if self.member else "non-member"

    def to_json(self):
        return {
            "schema": "switchlab/1",
            "type": "delta_certificate",
            "n": self.n,
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness else None,
            "primitive": self.primitive,
            "decomposition": (list(self.decomposition)
                              if self.decomposition else None),
        }

    def __repr__(self):
        if not self.member:
            return f"DeltaCertificate({self.n}, non-member)"
        return (f"DeltaCertificate({self.n}, member, witness={self.witness}, "
                f"primitive={self.primitive})")


def has_delta(n):
    """Full certificate for n: verdict, witness, primitivity, decomposition."""
    witness = delta_witness(n)
    if witness is None:
        return DeltaCertificate(n, False)
    alpha, m = primitive_decomposition(n)
    return DeltaCertificate(n, True, witness=witness,
                            primitive=(alpha == 1),
                            decomposition=(alpha, m))


def is_delta_primitive(n):
    """True for members with no splitting n = alpha^2 * m, alpha >= 2, m a member.

    Non-members are never primitive (primitivity presumes membership).
    """
    _check_natural(n)
    if not is_delta_member(n):
        return False
    return all(not (n % (a * a) == 0 and is_delta_member(n // (a * a)))
               for a in range(2, math.isqrt(n) + 1))


def primitive_decomposition(n):
    """The pair (alpha, m) with n = alpha^2 * m and m a primitive member.

    Takes the largest alpha whose cofactor is a member; maximality makes m
    primitive automatically (a further split of m would enlarge alpha), and
    the result re-checks that.  Primitive members get (1, n).
    """
    _check_natural(n)
    if not is_delta_member(n):
        raise DomainError(f"{n} is not a member; nothing to decompose")
    for alpha in range(math.isqrt(n), 1, -1):
        m, rem = divmod(n, alpha * alpha)
        if rem == 0 and is_delta_member(m):
            assert is_delta_primitive(m)
            return (alpha, m)
    return (1, n)


def delta_members(lo, hi, primitive_only=False):
    """Yield the members in [lo, hi], optionally only the primitive ones."""
    lo = max(1, lo)
    for n in range(lo, hi + 1):
        if is_delta_member(n):
            if primitive_only and not is_delta_primitive(n):
                continue
            yield n


# -- cubic generator families -------------------------------------------------


class GeneratorPolynomial:
    """A cubic (ax+b)(2ax+c)(alpha x + beta) whose values are eventually members.

    The third factor is the unique linear polynomial making the triple
    (ax+b, 2ax+c, 2ax+c) a witness for the product identically in x:
    matching coefficients forces alpha = 3a/(2b-c) and beta = (2c-b)/(2b-c).
    From n0 onward the witness bounds 1 < ax+b < 2ax+c < sqrt(n(x)) hold,
    so every value n(x), x >= n0, is a member.
    """

    __slots__ = ("a", "b", "c", "alpha", "beta", "n0")

    def __init__(self, a, b, c, alpha, beta, n0):
        self.a = a
        self.b = b
        self.c = c
        self.alpha = alpha
        self.beta = beta
        self.n0 = n0

    @property
    def factors(self):
        """Linear factors as (slope, intercept) pairs."""
        return ((self.a, self.b), (2 * self.a, self.c),
                (self.alpha, self.beta))

    @property
    def coefficients(self):
        """Expanded coefficients (c3, c2, c1, c0) of n(x)."""
        (a1, b1), (a2, b2), (a3, b3) = self.factors
        return (a1 * a2 * a3,
                a1 * a2 * b3 + a1 * a3 * b2 + a2 * a3 * b1,
                a1 * b2 * b3 + a2 * b1 * b3 + a3 * b1 * b2,
                b1 * b2 * b3)

    def value(self, x):
        return math.prod(s * x + t for s, t in self.factors)

    def witness_at(self, x):
        """The witness triple for n(x); valid (and canonical-ordered) once x >= n0."""
        return (self.a * x + self.b, 2 * self.a * x + self.c,
                2 * self.a * x + self.c)

    def to_json(self):
        return {
            "schema": "switchlab/1",
            "type": "generator_polynomial",
            "inputs": [self.a, self.b, self.c],
            "factors": [list(f) for f in self.factors],
            "coefficients": list(self.coefficients),
            "n0": self.n0,
        }

    def __repr__(self):
        terms = []
        for s, t in self.factors:
            body = f"{s}x" if s != 1 else "x"
            if t:
                body += f"{t:+d}"
            terms.append(f"({body})")
        return "".join(terms) + f" from x={self.n0}"


def generator_polynomial(a, b, c):
    """Build the cubic member family for slopes/intercepts (a, b, c).

    Needs a > 0, t = 2b - c positive, and t dividing both 3a and 2c - b
    (so the third factor has integer coefficients and positive slope).
    Returns the polynomial with the least n0 such that the witness chain
    1 < ax+b < 2ax+c < sqrt(n(x)) holds for every integer x >= n0.
    """
    if a <= 0:
        raise DomainError("slope a must be positive")
    t = 2 * b - c
    if t == 0:
        raise DomainError("2b - c must be nonzero")
    if math.gcd(3 * a, abs(2 * c - b)) % abs(t) != 0:
        raise DomainError("2b - c must divide both 3a and 2c - b")
    if t < 0:
        raise DomainError("2b - c must be positive (third slope 3a/(2b-c) > 0)")
    alpha = 3 * a // t
    beta = (2 * c - b) // t

    # linear conditions: ax + b >= 2  and  2ax + c > ax + b
    lin = max(math.ceil((2 - b) / a),
              math.floor((b - c) / a) + 1)
    # quadratic condition: q(x) = (ax+b)(alpha x+beta) - (2ax+c) > 0
    qa = a * alpha
    qb = a * beta + b * alpha - 2 * a
    qc = b * beta - c

    def q(x):
        return (qa * x + qb) * x + qc

    vertex = -qb / (2 * qa)
    probes = {max(lin, math.floor(vertex)), max(lin, math.ceil(vertex))}
    if all(q(x) > 0 for x in probes):
        n0 = lin  # parabola never dips at or past lin
    else:
        n0 = max(lin, math.ceil(vertex))
        while q(n0) <= 0:  # past the vertex q only grows
            n0 += 1
    return GeneratorPolynomial(a, b, c, alpha, beta, n0)


# -- factorization-pattern predicates -----------------------------------------


def non_delta_predicates(n):
    """Factorization patterns of n that each force non-membership.

    Returned tags (possibly several): two_times_odd (n = 2k, k odd),
    large_prime_factor (n = pk with p prime, p >= 2k - 1), prime_power,
    pq, pq2, p2q2 (shapes over two distinct primes), and pxqy_dominated
    (n = p^x q^y with p < q and q > p^x).  Any tag implies non-member.
    """
    _check_natural(n)
    tags = []
    if n % 2 == 0 and (n // 2) % 2 == 1:
        tags.append("two_times_odd")
    fact = factorint(n)
    if any(p >= 2 * (n // p) - 1 for p in fact):
        tags.append("large_prime_factor")
    exps = sorted(fact.values())
    if len(fact) == 1:
        tags.append("prime_power")
    elif len(fact) == 2:
        if exps == [1, 1]:
            tags.append("pq")
        elif exps == [1, 2]:
            tags.append("pq2")
        elif exps == [2, 2]:
            tags.append("p2q2")
        p, q = sorted(fact)
        if q > p ** fact[p]:
            tags.append("pxqy_dominated")
    return tags


def pqr_check(p, q, r):
    """Membership of n = pqr for primes p < q < r, decided by pattern alone.

    The product is a member exactly when (r-p+1)(q-p+1) = p^2 - p + 1 or
    (q, r) is (p+2, 2p+1) or (2p-1, 3p-2).  Returns (verdict, reason).
    """
    for v in (p, q, r):
        if not isinstance(v, int) or not isprime(v):
            raise DomainError(f"{v!r} is not prime")
    if not p < q < r:
        raise DomainError("expected p < q < r")
    reasons = []
    if (r - p + 1) * (q - p + 1) == p * p - p + 1:
        reasons.append("(r-p+1)(q-p+1) = p^2-p+1")
    if (q, r) == (p + 2, 2 * p + 1):
        reasons.append("(q, r) = (p+2, 2p+1)")
    if (q, r) == (2 * p - 1, 3 * p - 2):
        reasons.append("(q, r) = (2p-1, 3p-2)")
    if reasons:
        return (True, " and ".join(reasons))
    return (False, "no product-of-three-primes membership pattern applies")
