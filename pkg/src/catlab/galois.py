"""
Finite-field certification of Galois groups of reciprocal polynomials.

For A in Sp(2n,Z) the characteristic polynomial is monic reciprocal of
degree 2n and its Galois group embeds in the hyperoctahedral group
S_2 wr S_n.  A squarefree factorization mod ell whose pattern is one
irreducible factor of degree 2k times distinct linear factors witnesses
a (2k)-cycle of Frobenius; collecting the classes {2, 4, 2n-2, 2n}
(as a set of distinct values) certifies the full wreath product.
"""

from dataclasses import dataclass, field

import numpy as np
import sympy

_x = sympy.Symbol("x")


def primes_upto(bound):
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(bound ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


@dataclass(frozen=True)
class CycleType:
    degrees: tuple  # sorted multiset of irreducible factor degrees
    squarefree: bool


def factor_type(coeffs, ell):
    """
    Factorization type of a monic integer polynomial mod an odd prime:
    sorted factor degrees with multiplicity, plus a squarefree flag
    (gcd(f, f') = 1).  Only degrees are computed.
    """
    if ell == 2 or not sympy.isprime(ell):
        raise ValueError("ell must be an odd prime")
    f = sympy.Poly([c % ell for c in coeffs], _x, modulus=ell)
    squarefree = sympy.gcd(f, f.diff(_x)).degree() == 0
    degrees = []
    for factor, mult in f.factor_list()[1]:
        degrees.extend([factor.degree()] * mult)
    return CycleType(degrees=tuple(sorted(degrees)), squarefree=squarefree)


def _witness_class(ctype, two_n):
    """2k when the pattern is one degree-2k factor times distinct linears."""
    if not ctype.squarefree:
        return None
    linear = sum(1 for d in ctype.degrees if d == 1)
    big = [d for d in ctype.degrees if d > 1]
    if len(big) == 1 and linear == two_n - big[0]:
        return big[0]
    return None


def _integer_factorization(coeffs):
    """Nontrivial monic integer factorization, or None if irreducible."""
    f = sympy.Poly(coeffs, _x, domain="ZZ")
    content, factors = f.factor_list()
    if len(factors) == 1 and factors[0][1] == 1:
        return None
    parts = []
    for poly, mult in factors:
        parts.extend([tuple(int(c) for c in poly.all_coeffs())] * mult)
    # multiply-back verification, exact
    prod = sympy.Poly([int(content)], _x, domain="ZZ")
    for p in parts:
        prod = prod * sympy.Poly(list(p), _x, domain="ZZ")
    assert prod == f, "integer factorization failed to multiply back"
    return tuple(parts)


@dataclass(frozen=True)
class GaloisCertificate:
    verdict: str  # certified_wreath | certified_irreducible_only |
    #               undetermined | contradicted
    primes_scanned: tuple
    witnesses: dict
    factorization: tuple = None  # set on contradicted verdicts


def required_classes(n):
    if n == 1:
        return {2}
    return {2, 4, 2 * n - 2, 2 * n}


def certify_wreath(coeffs, prime_bound=200):
    """
    Scans odd primes up to prime_bound, collecting cycle-class witnesses
    from squarefree reductions of a monic reciprocal polynomial.
    """
    coeffs = [int(c) for c in coeffs]
    deg = len(coeffs) - 1
    if deg % 2 != 0 or deg < 2:
        raise ValueError("degree must be even and at least 2")
    if coeffs != coeffs[::-1]:
        raise ValueError("polynomial must be reciprocal")
    n = deg // 2
    zfac = _integer_factorization(coeffs)
    if zfac is not None:
        return GaloisCertificate(verdict="contradicted", primes_scanned=(),
                                 witnesses={}, factorization=zfac)
    need = required_classes(n)
    witnesses = {}
    scanned = []
    for ell in primes_upto(prime_bound):
        if ell == 2:
            continue
        scanned.append(ell)
        ctype = factor_type(coeffs, ell)
        cls = _witness_class(ctype, deg)
        if cls is not None and cls not in witnesses:
            witnesses[cls] = (ell, ctype.degrees)
        if need <= set(witnesses):
            return GaloisCertificate(verdict="certified_wreath",
                                     primes_scanned=tuple(scanned),
                                     witnesses=witnesses)
    if deg in witnesses:
        return GaloisCertificate(verdict="certified_irreducible_only",
                                 primes_scanned=tuple(scanned),
                                 witnesses=witnesses)
    return GaloisCertificate(verdict="undetermined",
                             primes_scanned=tuple(scanned),
                             witnesses=witnesses)


def reciprocal_census(ell, n):
    """
    Enumerates all ell^n monic reciprocal polynomials of degree 2n over
    F_ell, classifying each; returns {"total": ell^n, "classes": {2k:
    {"count", "main_term", "abs_error"}}, "other": remainder}.
    """
    if not sympy.isprime(ell) or ell == 2:
        raise ValueError("ell must be an odd prime")
    if ell ** n > 10 ** 7:
        raise ValueError("census guard exceeded (ell^n > 1e7)")
    counts = {2 * k: 0 for k in range(1, n + 1)}
    total = 0
    import itertools
    for free in itertools.product(range(ell), repeat=n):
        # palindromic coefficient vector [1, a1, ..., an, ..., a1, 1]
        coeffs = [1] + list(free) + list(reversed(free[:-1])) + [1]
        total += 1
        cls = _witness_class(factor_type(coeffs, ell), 2 * n)
        if cls is not None:
            counts[cls] += 1
    classes = {}
    for k in range(1, n + 1):
        main = ell ** n / (2 ** (n - k + 1) * k *
                           sympy.factorial(n - k))
        classes[2 * k] = {
            "count": counts[2 * k],
            "main_term": float(main),
            "abs_error": abs(counts[2 * k] - float(main)),
        }
    return {"total": total, "classes": classes,
            "other": total - sum(counts.values())}


def power_scan(A, m_max, prime_bound=200):
    """
    For m = 1..m_max: certify char(A^m) irreducible via a 2n-cycle
    witness, or reducible via an exact integer factorization; k0 is the
    least certified-reducible m (None when undetermined beyond m_max).
    """
    from .symplectic import SymplecticMatrix, char_poly
    if not isinstance(A, SymplecticMatrix):
        A = SymplecticMatrix(A)
    results = []
    k0 = None
    Am = A
    for m in range(1, m_max + 1):
        coeffs = list(char_poly(Am).coeffs)
        zfac = _integer_factorization(coeffs)
        if zfac is not None:
            verdict = "reducible"
            if k0 is None:
                k0 = m
            results.append({"m": m, "coeffs": tuple(coeffs),
                            "verdict": verdict, "factorization": zfac})
        else:
            witness = None
            for ell in primes_upto(prime_bound):
                if ell == 2:
                    continue
                ctype = factor_type(coeffs, ell)
                if ctype.squarefree and ctype.degrees == (len(coeffs) - 1,):
                    witness = ell
                    break
            verdict = "irreducible" if witness else "undetermined"
            results.append({"m": m, "coeffs": tuple(coeffs),
                            "verdict": verdict, "witness": witness})
        Am = Am @ A
    return {"per_m": results, "k0": k0}


def sl2_census(ell):
    """
    Brute-force counts of {A in SL(2, F_ell)} bucketed by trace; the
    count for every trace t is within 2*ell of ell^2 and totals
    |SL(2, F_ell)| = ell^3 - ell.
    """
    if not sympy.isprime(ell) or ell == 2:
        raise ValueError("ell must be an odd prime")
    if ell > 31:
        raise ValueError("census guard exceeded (ell > 31)")
    r = np.arange(ell)
    a, b, c, d = np.meshgrid(r, r, r, r, indexing="ij")
    det1 = (a * d - b * c) % ell == 1
    traces = (a + d) % ell
    counts = np.bincount(traces[det1].ravel(), minlength=ell)
    assert counts.sum() == ell ** 3 - ell
    return {int(t): int(counts[t]) for t in range(ell)}


def _interleave(block_matrix, n):
    """Reorders (x1..xn, xi1..xin) block coordinates to interleaved."""
    perm = []
    for i in range(n):
        perm.extend([i, n + i])
    return block_matrix[np.ix_(perm, perm)]


def _shear_pool(n):
    """All nonzero symmetric n x n 0/1 matrices."""
    import itertools
    pool = []
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    for bits in itertools.product((0, 1), repeat=len(positions)):
        if not any(bits):
            continue
        S = np.zeros((n, n), dtype=object)
        for (i, j), bit in zip(positions, bits):
            S[i, j] = S[j, i] = bit
        pool.append(S)
    return pool


def sample_sp(n, word_length, count, seed=0):
    """
    Deterministic pseudorandom words in a fixed generating set of
    Sp(2n,Z) and their inverses.

    Generating set: upper and lower symplectic transvections
    [[I, S], [0, I]] and [[I, 0], [S, I]] over all nonzero symmetric 0/1
    shears S.  Each word alternates upper/lower letters (random starting
    side), draws S uniformly per letter, and uses either the generators
    or their inverses throughout (one sign per word): same-side letters
    commute and mixed signs produce elliptic products, so this schedule
    keeps the walk uniformly hyperbolic.  Output is in interleaved
    coordinates.
    """
    if n not in (1, 2, 3):
        raise ValueError("n must be 1, 2, or 3")
    from .symplectic import SymplecticMatrix
    rng = np.random.default_rng(seed)
    pool = _shear_pool(n)
    I = np.eye(n, dtype=object)
    Z = np.zeros((n, n), dtype=object)
    out = []
    for _ in range(count):
        A = np.eye(2 * n, dtype=object)
        sign = 1 if rng.integers(2) == 0 else -1
        side = int(rng.integers(2))
        for step in range(word_length):
            S = sign * pool[int(rng.integers(len(pool)))]
            if (step + side) % 2 == 0:
                letter = np.block([[I, S], [Z, I]])
            else:
                letter = np.block([[I, Z], [S, I]])
            A = A @ letter
        out.append(SymplecticMatrix(_interleave(A, n).tolist()))
    return out
