"""Free Lie superalgebras on a graded generator space.

A generator space is a finite list of symbols, each carrying a nonzero
integer degree, a parity, and an optional weight.  All degrees must lie on
one side of zero; the free Lie superalgebra generated within one cone is
graded by the positive (or negative) integers and each component is finite
dimensional.

Bases are super-Lyndon monomials: the standard bracketings of Lyndon words
over the ordered alphabet of generators, together with one square ``[u, u]``
for every Lyndon monomial ``u`` of odd parity.  Odd squares are nonzero in a
Lie superalgebra and these are exactly the extra basis elements beyond the
classical Lyndon basis.  Normal forms are computed through the embedding
into the free associative superalgebra: a bracket is expanded into words and
the result is solved back against the expansions of the basis monomials.

Dimensions can be checked independently against the Witt formula in pair
form: the unsigned and signed Hilbert series of the enveloping algebra (the
tensor algebra) determine, degree by degree, the sum and difference of the
even and odd dimensions of the free Lie superalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import RatMatrix, rank, solve

_ONE = Fraction(1)

# A monomial is a generator index (leaf) or a pair of monomials (bracket).
Monomial = object


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    parity: int
    weight: tuple = ()


class GeneratorSpace:
    """Ordered alphabet of graded generators; the order fixes the basis."""

    def __init__(self, generators):
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g)
            gens.append(g)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for g in gens:
            if g.degree == 0:
                raise ValueError("generator degree must be nonzero")
            if g.parity not in (0, 1):
                raise ValueError("parity must be 0 or 1")
        self.gens = tuple(gens)
        self._index = {g.name: i for i, g in enumerate(self.gens)}
        self._expand_cache: dict = {}
        self._basis_cache: dict = {}
        self._system_cache: dict = {}

    def index(self, name: str) -> int:
        return self._index[name]

    def cone(self) -> int:
        """Common sign of the generator degrees (0 for an empty space)."""
        signs = {1 if g.degree > 0 else -1 for g in self.gens}
        if len(signs) > 1:
            raise ValueError("mixed-sign degrees")
        return signs.pop() if signs else 0


def element(gens: GeneratorSpace, name: str) -> dict:
    return {gens.index(name): _ONE}


def _lyndon_words(k: int, maxlen: int):
    """All Lyndon words over 0..k-1 of length <= maxlen, in lex order."""
    if k == 0 or maxlen == 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


def _bracketing(word: tuple) -> Monomial:
    """Standard bracketing of a Lyndon word: split off the least proper
    suffix, which is the longest Lyndon proper suffix."""
    if len(word) == 1:
        return word[0]
    v = min(word[i:] for i in range(1, len(word)))
    u = word[: len(word) - len(v)]
    return (_bracketing(u), _bracketing(v))


def monomial_degree(gens: GeneratorSpace, m: Monomial) -> int:
    if isinstance(m, int):
        return gens.gens[m].degree
    return monomial_degree(gens, m[0]) + monomial_degree(gens, m[1])


def monomial_parity(gens: GeneratorSpace, m: Monomial) -> int:
    if isinstance(m, int):
        return gens.gens[m].parity
    return (monomial_parity(gens, m[0]) + monomial_parity(gens, m[1])) % 2


def monomial_weight(gens: GeneratorSpace, m: Monomial) -> tuple:
    if isinstance(m, int):
        return tuple(gens.gens[m].weight)
    wa = monomial_weight(gens, m[0])
    wb = monomial_weight(gens, m[1])
    return tuple(a + b for a, b in zip(wa, wb))


def monomial_str(gens: GeneratorSpace, m: Monomial) -> str:
    if isinstance(m, int):
        return gens.gens[m].name
    return "[%s,%s]" % (monomial_str(gens, m[0]), monomial_str(gens, m[1]))


def _monomial_word(m: Monomial) -> tuple:
    if isinstance(m, int):
        return (m,)
    return _monomial_word(m[0]) + _monomial_word(m[1])


def basis_at_degree(gens: GeneratorSpace, d: int) -> list:
    """Ordered basis of the degree-d component, as bracket monomials.

    Monomials are sorted by their underlying words; a square [u, u] sorts
    at the doubled word uu, which is periodic and so never collides with a
    Lyndon word.
    """
    if not gens.gens:
        return []
    sign = gens.cone()
    if d == 0 or (d > 0) != (sign > 0):
        raise ValueError("mixed-sign degrees")
    n = abs(d)
    if n in gens._basis_cache:
        return list(gens._basis_cache[n])
    degs = [abs(g.degree) for g in gens.gens]
    pars = [g.parity for g in gens.gens]
    found = []
    half = n // 2 if n % 2 == 0 else None
    for w in _lyndon_words(len(degs), n // min(degs)):
        wd = sum(degs[c] for c in w)
        if wd == n:
            found.append((w, _bracketing(w)))
        elif wd == half and sum(pars[c] for c in w) % 2 == 1:
            sq = _bracketing(w)
            found.append((w + w, (sq, sq)))
    found.sort(key=lambda pair: pair[0])
    basis = [mon for _, mon in found]
    gens._basis_cache[n] = tuple(basis)
    return basis


def expand(gens: GeneratorSpace, m: Monomial) -> dict:
    """Image of a bracket monomial in the free associative superalgebra,
    as a map from words to coefficients."""
    cached = gens._expand_cache.get(m)
    if cached is not None:
        return cached
    if isinstance(m, int):
        out = {(m,): _ONE}
    else:
        a, b = m
        ea = expand(gens, a)
        eb = expand(gens, b)
        sgn = -_ONE if monomial_parity(gens, a) and monomial_parity(gens, b) else _ONE
        out = {}
        for wa, ca in ea.items():
            for wb, cb in eb.items():
                c = ca * cb
                key = wa + wb
                out[key] = out.get(key, 0) + c
                key = wb + wa
                out[key] = out.get(key, 0) - sgn * c
        out = {w: c for w, c in out.items() if c}
    gens._expand_cache[m] = out
    return out


def _system(gens: GeneratorSpace, d: int):
    """Expansion matrix of the degree-d basis, with its word index."""
    n = abs(d)
    cached = gens._system_cache.get(n)
    if cached is not None:
        return cached
    basis = basis_at_degree(gens, d)
    expansions = [expand(gens, m) for m in basis]
    words = sorted({w for e in expansions for w in e})
    widx = {w: i for i, w in enumerate(words)}
    entries = {}
    for j, e in enumerate(expansions):
        for w, c in e.items():
            entries[(widx[w], j)] = c
    mat = RatMatrix(len(words), len(basis), entries)
    assert rank(mat) == len(basis)
    cached = (basis, widx, mat)
    gens._system_cache[n] = cached
    return cached


def _monomial_coords(gens: GeneratorSpace, m: Monomial, d: int) -> dict:
    basis, widx, mat = _system(gens, d)
    exp = expand(gens, m)
    rhs = [Fraction(0)] * len(widx)
    for w, c in exp.items():
        rhs[widx[w]] = c
    sol = solve(mat, rhs)
    assert sol is not None
    return {basis[j]: c for j, c in enumerate(sol) if c}


def bracket_normal_form(gens: GeneratorSpace, a: dict, b: dict) -> dict:
    """Bracket of two elements, expressed in the monomial basis.

    Elements are maps from basis monomials to rational coefficients; the
    result is again such a map (empty when the bracket vanishes).
    """
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            c = c1 * c2
            if not c:
                continue
            d = monomial_degree(gens, m1) + monomial_degree(gens, m2)
            for mon, x in _monomial_coords(gens, (m1, m2), d).items():
                out[mon] = out.get(mon, 0) + c * x
    return {m: c for m, c in out.items() if c}


# ---------------------------------------------------------------------------
# Witt formula, pair form

def _series_mul(a: list, b: list, n: int) -> list:
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if i + j > n:
                break
            out[i + j] += ai * bj
    return out


def _series_inv(a: list, n: int) -> list:
    assert a[0] == 1
    out = [0] * (n + 1)
    out[0] = 1
    for m in range(1, n + 1):
        acc = 0
        for k in range(1, m + 1):
            if k < len(a) and a[k]:
                acc += a[k] * out[m - k]
        out[m] = -acc
    return out


def _binomial_factor(sign: int, d: int, k: int, n: int) -> list:
    """The series (1 + sign*t^d)^k truncated at degree n, k any integer."""
    base = [0] * (n + 1)
    base[0] = 1
    if d <= n:
        base[d] = sign
    out = [0] * (n + 1)
    out[0] = 1
    for _ in range(abs(k)):
        out = _series_mul(out, base, n)
    if k < 0:
        out = _series_inv(out, n)
    return out


def witt_dimensions(gens: GeneratorSpace, max_degree: int) -> dict:
    """Dimensions (even, odd) of the free Lie superalgebra per degree.

    Works degree by degree from the Hilbert series of the tensor algebra:
    the unsigned series determines even+odd and the signed series (words
    weighted by parity sign) determines even-odd, because the enveloping
    algebra factors as a symmetric algebra on the even part times an
    exterior algebra on the odd part.
    """
    sign = gens.cone()
    if max_degree == 0 or (sign and (max_degree > 0) != (sign > 0)):
        raise ValueError("mixed-sign degrees")
    step = 1 if max_degree > 0 else -1
    n = abs(max_degree)
    vp = [0] * (n + 1)
    vm = [0] * (n + 1)
    for g in gens.gens:
        dd = abs(g.degree)
        if dd <= n:
            vp[dd] += 1
            vm[dd] += 1 if g.parity == 0 else -1
    ru = _series_inv([1] + [-c for c in vp[1:]], n)
    rs = _series_inv([1] + [-c for c in vm[1:]], n)
    dims = {}
    for d in range(1, n + 1):
        s, diff = ru[d], rs[d]
        even, odd = (s + diff) // 2, (s - diff) // 2
        assert even >= 0 and odd >= 0 and even + odd == s
        dims[step * d] = (even, odd)
        strip = _series_mul(
            _binomial_factor(-1, d, even, n), _binomial_factor(1, d, -odd, n), n
        )
        ru = _series_mul(ru, strip, n)
        rs = _series_mul(rs, _binomial_factor(-1, d, diff, n), n)
    return dims
