"""Ring presentations, Seidel elements, and certificates.

Builds the classical and quantum presentations of the ambient space M
and its real locus L from a Delzant polytope, computes Seidel elements
of facet circle actions and their composites, inverts elements over the
Laurent coefficient ring, and emits the cross-checks: Betti numbers
against the quotient Hilbert function, the degree-doubling isomorphism
between the L- and M-presentations, and uniruledness certificates.
"""

from dataclasses import dataclass

from .errors import CrosscheckFailedError, NotInvertibleError
from .f2ring import (
    QHElement,
    QuotientRing,
    buchberger,
    hilbert_function,
    rehomogenize,
    saturate_t,
)
from .polytope import (
    betti_numbers_L,
    primitive_collection_data,
    primitive_collections,
    require_delzant,
)


@dataclass(frozen=True)
class Presentation:
    space: str  # "L" | "M"
    flavor: str  # "classical" | "quantum"
    nvars: int
    generator_cod: int  # degree of each X_i: 1 for L, 2 for M
    grading_unit: int  # degree of q: 1 for L, 2 for M
    linear_relations: tuple
    sr_relations: tuple


@dataclass(frozen=True)
class SeidelElement:
    element: QHElement
    provenance: object  # facet index or integer combination


@dataclass(frozen=True)
class UniruledCertificate:
    witness: SeidelElement
    inverse: object  # QHElement, or None when inversion failed
    fundamental_coefficient: frozenset  # q-exponents on the unit class
    verdict: str  # "uniruled" | "inconclusive"
    reason: object


@dataclass(frozen=True)
class CrosscheckReport:
    betti: tuple
    hilbert: tuple
    hilbert_scaled_m: tuple


def _check_space(space):
    if space not in ("L", "M"):
        raise ValueError(f"space must be 'L' or 'M', got {space!r}")


def linear_relations(p, space="L"):
    """One relation per coordinate: sum of X_i with odd normal entry."""
    _check_space(space)
    require_delzant(p)
    d = p.nfacets
    out = []
    for k in range(p.dim):
        rel = frozenset()
        for i in range(d):
            if p.normals[i][k] % 2:
                exps = [0] * d
                exps[i] = 1
                rel ^= {(tuple(exps), 0)}
        out.append(rel)
    return tuple(out)


def classical_sr(p):
    """Squarefree monomial per primitive collection."""
    d = p.nfacets
    out = []
    for idx in primitive_collections(p):
        exps = [0] * d
        for i in idx:
            exps[i - 1] = 1
        out.append(frozenset({(tuple(exps), 0)}))
    return tuple(out)


def quantum_sr(p, space="L"):
    """Binomial per primitive collection I:
    prod_{i in I} X_i + prod_{j off I} X_j^{|a_j|} t^m."""
    _check_space(space)
    d = p.nfacets
    out = []
    for pc in primitive_collection_data(p):
        left = [0] * d
        for i in pc.indices:
            left[i - 1] = 1
        right = [0] * d
        for j, a in enumerate(pc.batyrev):
            if a < 0:
                right[j] = -a
        out.append(frozenset({(tuple(left), 0), (tuple(right), pc.m)}))
    return tuple(out)


def build_ring(p, space="L", flavor="quantum"):
    """Quotient ring plus its presentation record."""
    _check_space(space)
    if flavor not in ("classical", "quantum"):
        raise ValueError(f"flavor must be 'classical' or 'quantum', got {flavor!r}")
    require_delzant(p)
    lin = linear_relations(p, space)
    sr = quantum_sr(p, space) if flavor == "quantum" else classical_sr(p)
    unit_deg = 1 if space == "L" else 2
    ring = QuotientRing(lin + sr, nvars=p.nfacets, cod_unit=unit_deg)
    pres = Presentation(space, flavor, p.nfacets, unit_deg, unit_deg, lin, sr)
    return ring, pres


def unit(ring):
    return QHElement({ring.basis[0]: frozenset({0})}, 0)


def element_from_monomial(ring, exps, qexp=0):
    """The class of X^exps q^qexp in the standard basis."""
    raw = frozenset({(tuple(exps), 0)})
    return rehomogenize(ring.normal_form(raw), sum(exps), ring).qshift(qexp)


def multiply(ring, a, b):
    """Quantum product in the standard basis with exact q bookkeeping."""
    acc = {}
    for m1, s1 in a.coeffs.items():
        c1 = ring.cod[m1]
        for m2, s2 in b.coeffs.items():
            conv = set()
            for e1 in s1:
                for e2 in s2:
                    conv ^= {e1 + e2}
            if not conv:
                continue
            c12 = c1 + ring.cod[m2]
            for m3 in ring.nf_mono_mul(m1, m2):
                shift = ring.cod[m3] - c12
                cur = acc.setdefault(m3, set())
                for e in conv:
                    cur ^= {e + shift}
    hom = None
    if a.homogeneous_cod is not None and b.homogeneous_cod is not None:
        hom = a.homogeneous_cod + b.homogeneous_cod
    return QHElement(acc, hom)


def _tmul(a, b):
    res = 0
    while b:
        if b & 1:
            res ^= a
        a <<= 1
        b >>= 1
    return res


def _tdivmod(a, b):
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        a ^= b << shift
        q |= 1 << shift
    return q, a


def _tdiv_exact(a, b):
    q, r = _tdivmod(a, b)
    if r:
        raise ArithmeticError("inexact division in F2[t]")
    return q


def _tdet(rows):
    """Fraction-free determinant of a matrix of F2[t] bitmasks."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]  # characteristic 2: swaps are free
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _tmul(m[k][k], m[i][j]) ^ _tmul(m[i][k], m[k][j])
                m[i][j] = _tdiv_exact(num, prev)
            m[i][k] = 0
        prev = m[k][k]
    return m[n - 1][n - 1]


def invert(ring, a):
    """Inverse of a, or NotInvertibleError.

    The multiplication matrix over the Laurent ring is cleared to F2[t]
    by a global t^E; a is a unit iff the cleared determinant is a single
    power t^k, and Cramer columns then give the inverse exactly.
    """
    r = ring.dim
    cols = [multiply(ring, a, QHElement({m: frozenset({0})}, ring.cod[m]))
            for m in ring.basis]
    exps = [e for col in cols for s in col.coeffs.values() for e in s]
    big = max(max(exps, default=0), 0)
    index = {m: i for i, m in enumerate(ring.basis)}
    mat = [[0] * r for _ in range(r)]
    for j, col in enumerate(cols):
        for m, s in col.coeffs.items():
            bits = 0
            for e in s:
                bits |= 1 << (big - e)
            mat[index[m]][j] = bits
    d = _tdet(mat)
    if d == 0 or d & (d - 1):
        nterms = bin(d).count("1")
        raise NotInvertibleError(
            "determinant of the multiplication matrix is not a unit "
            f"({nterms} terms)")
    k = d.bit_length() - 1
    coeffs = {}
    for j in range(r):
        mj = [row[:] for row in mat]
        for i in range(r):
            mj[i][j] = 1 if i == 0 else 0
        dj = _tdet(mj)
        out = set()
        bit = 0
        while dj:
            if dj & 1:
                out.add(k - big - bit)
            dj >>= 1
            bit += 1
        if out:
            coeffs[ring.basis[j]] = out
    hom = None if a.homogeneous_cod is None else -a.homogeneous_cod
    x = QHElement(coeffs, hom)
    if multiply(ring, a, x) != unit(ring):
        raise NotInvertibleError("candidate inverse failed verification")
    return x


def seidel_facet(ring, j):
    """Seidel element of the facet-j half rotation: X_j q, verified invertible."""
    key = ("seidel", j)
    if key not in ring.cache:
        if not 1 <= j <= ring.nvars:
            raise ValueError(f"facet index {j} out of range")
        exps = [0] * ring.nvars
        exps[j - 1] = 1
        el = element_from_monomial(ring, exps, qexp=1)
        inv = invert(ring, el)
        ring.cache[key] = SeidelElement(el, j)
        ring.cache[("seidel_inv", j)] = inv
    return ring.cache[key]


def seidel_composite(ring, c):
    """Product of facet Seidel elements with integer multiplicities."""
    c = tuple(int(x) for x in c)
    if len(c) != ring.nvars:
        raise ValueError(f"combination length {len(c)} != {ring.nvars} facets")
    acc = unit(ring)
    for j, cj in enumerate(c, start=1):
        if cj == 0:
            continue
        seidel_facet(ring, j)
        factor = ring.cache[("seidel", j)].element if cj > 0 \
            else ring.cache[("seidel_inv", j)]
        for _ in range(abs(cj)):
            acc = multiply(ring, acc, factor)
    return SeidelElement(acc, c)


def verify_seidel_relation(ring, pc):
    """Product over I of S_j equals the Batyrev-weighted product off I."""
    lhs = unit(ring)
    for i in pc.indices:
        lhs = multiply(ring, lhs, seidel_facet(ring, i).element)
    rhs = unit(ring)
    for j, a in enumerate(pc.batyrev, start=1):
        for _ in range(-a if a < 0 else 0):
            rhs = multiply(ring, rhs, seidel_facet(ring, j).element)
    return lhs == rhs


def verify_psi(p_l, p_m):
    """Degree-doubling isomorphism check: identical reduced bases after
    X_i -> Y_i, q -> Q, with all degrees doubled."""
    if p_l.nvars != p_m.nvars:
        return False
    if (p_m.generator_cod, p_m.grading_unit) != \
            (2 * p_l.generator_cod, 2 * p_l.grading_unit):
        return False
    g_l = saturate_t(buchberger(p_l.linear_relations + p_l.sr_relations,
                                nvars=p_l.nvars))
    g_m = saturate_t(buchberger(p_m.linear_relations + p_m.sr_relations,
                                nvars=p_m.nvars))
    return set(g_l.generators) == set(g_m.generators)


def uniruled_certificate(ring):
    """Invertible Seidel witness with no fundamental-class term."""
    exps = [0] * ring.nvars
    exps[0] = 1
    el = element_from_monomial(ring, exps, qexp=1)
    witness = SeidelElement(el, 1)
    fundamental = el.coeffs.get(ring.basis[0], frozenset())
    try:
        inv = invert(ring, el)
    except NotInvertibleError as err:
        return UniruledCertificate(witness, None, fundamental,
                                   "inconclusive", str(err))
    if fundamental:
        return UniruledCertificate(witness, inv, fundamental, "inconclusive",
                                   "witness carries a fundamental-class term")
    return UniruledCertificate(witness, inv, fundamental, "uniruled", None)


def scaled_hilbert(ring):
    """Hilbert function in display degrees (cod times cod_unit)."""
    if not ring.basis:
        return ()
    top = max(ring.cod.values()) * ring.cod_unit
    dims = [0] * (top + 1)
    for m in ring.basis:
        dims[ring.cod[m] * ring.cod_unit] += 1
    return tuple(dims)


def betti_crosscheck(p):
    """Morse-index histogram vs classical quotient Hilbert functions."""
    ring_l, _ = build_ring(p, "L", "classical")
    h = hilbert_function(ring_l)
    b = betti_numbers_L(p)
    if tuple(reversed(h)) != tuple(b):
        raise CrosscheckFailedError(
            "classical Hilbert function (reversed) differs from the "
            "Morse-index histogram", tuple(reversed(h)), tuple(b))
    ring_m, _ = build_ring(p, "M", "classical")
    got = scaled_hilbert(ring_m)
    want = tuple(h[c // 2] if c % 2 == 0 else 0
                 for c in range(2 * len(h) - 1))
    if got != want:
        raise CrosscheckFailedError(
            "ambient Hilbert function is not the degree-doubled one",
            got, want)
    return CrosscheckReport(tuple(b), h, got)


def min_quantum_degree(p):
    """Smallest quantum degree over primitive collections; None if there
    are no collections."""
    data = primitive_collection_data(p)
    if not data:
        return None
    return min(pc.m for pc in data)
