"""Exact integer arithmetic on a rank-3 K-group lattice and its rank-5 extension.

The lattice carries a unimodular Euler form chi, expressed in three bases:

    S  (simples)                     chi_S rows (1,-2, 2), (0, 1,-2), (0, 0, 1)
    P  (projectives, order P3,P2,P1) chi_P rows (1, 2, 2), (0, 1, 2), (0, 0, 1)
    R  (alpha, delta1, delta2)       chi_R rows (1, 0, 0), (0, 0, 1), (0,-1, 0)

with alpha = [P3]-[P2]+[P1], delta1 = [P2]-[P3], delta2 = [P1]-[P2].  The
symmetrized form I = chi + chi^T degenerates to I = diag(2,0,0) in the R
basis; real roots are +-alpha - (p+1) delta1 - (q+1) delta2 with p*q even,
and reflections r_beta(x) = x - I(beta,x) beta generate the Weyl group,
whose Coxeter element c = r_a1 r_a2 r_a3 equals r_alpha.

The rank-5 hyperbolic extension adds dual classes kappa1, kappa2; classes are
written in the display order (kappa1, kappa2, alpha, delta2, delta1), where
the extended symmetric form I~ has the fixed matrix ``I_TILDE`` below.  The
extended reflections r~_beta(x) = x - I~(beta,x) beta restrict to the rank-3
ones, and the translations tau1 = r~_a2 r~_a3, tau2 = r~_a2 r~_a1 satisfy
tau1 tau2 tau1^-1 tau2^-1 = c~^-2 with c~^2 central.

Everything here is exact: matrices are tuples of tuples of Python ints (which
are arbitrary precision, so 64-bit overflow cannot occur), and inverses of
unimodular matrices are computed by the adjugate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import (
    DegenerateInput,
    NotARoot,
    NotExceptional,
    NotInvertible,
    UnknownRelation,
)

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]

# ---------------------------------------------------------------------------
# exact matrix helpers
# ---------------------------------------------------------------------------

def _mat(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return _mat((1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def mat_vec(a: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def det(a: Matrix) -> int:
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1 :] for row in a[1:])
        total += (-1) ** j * a[0][j] * det(minor)
    return total


def unimodular_inverse(a: Matrix) -> Matrix:
    """Inverse of an integer matrix with det +-1, via the adjugate."""
    d = det(a)
    if d not in (1, -1):
        raise NotInvertible(f"matrix has determinant {d}, not +-1")
    n = len(a)
    cof = [
        [
            (-1) ** (i + j)
            * det(tuple(row[:j] + row[j + 1 :] for k, row in enumerate(a) if k != i))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return _mat([[d * cof[j][i] for j in range(n)] for i in range(n)])


def _mat_pow(a: Matrix, k: int) -> Matrix:
    if k < 0:
        return _mat_pow(unimodular_inverse(a), -k)
    out = identity_matrix(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


# ---------------------------------------------------------------------------
# bases and forms
# ---------------------------------------------------------------------------

CHI = {
    "S": _mat([(1, -2, 2), (0, 1, -2), (0, 0, 1)]),
    "P": _mat([(1, 2, 2), (0, 1, 2), (0, 0, 1)]),
    "R": _mat([(1, 0, 0), (0, 0, 1), (0, -1, 0)]),
}

# columns of TO_R[b] are the b-basis vectors written in R coordinates
_TO_R = {
    "S": _mat([(1, -1, 1), (-1, 1, 0), (0, 1, -1)]),
    "P": _mat([(1, 1, 1), (0, 1, 1), (-1, -1, 0)]),
    "R": identity_matrix(3),
}
_FROM_R = {b: unimodular_inverse(m) for b, m in _TO_R.items()}

#: symmetrized form I = chi + chi^T in the R basis
I_FORM = _mat([(2, 0, 0), (0, 0, 0), (0, 0, 0)])

#: extended symmetric form in the display basis (kappa1, kappa2, alpha, delta2, delta1)
I_TILDE = _mat(
    [
        (0, 0, 0, 0, 1),
        (0, 0, 0, -1, 0),
        (0, 0, 2, 0, 0),
        (0, -1, 0, 0, 0),
        (1, 0, 0, 0, 0),
    ]
)


@dataclass(frozen=True)
class KClass:
    """An element of the rank-3 lattice, tagged with its basis."""

    coords: Vector
    basis: str = "R"

    def __post_init__(self) -> None:
        if self.basis not in CHI:
            raise DegenerateInput(f"basis must be one of S, P, R; got {self.basis!r}")
        c = tuple(int(v) for v in self.coords)
        if len(c) != 3:
            raise DegenerateInput(f"KClass needs 3 coordinates, got {len(c)}")
        object.__setattr__(self, "coords", c)

    def to(self, basis: str) -> "KClass":
        if basis == self.basis:
            return self
        r = mat_vec(_TO_R[self.basis], self.coords)
        return KClass(mat_vec(_FROM_R[basis], r), basis)

    def __add__(self, other: "KClass") -> "KClass":
        o = other.to(self.basis)
        return KClass(tuple(a + b for a, b in zip(self.coords, o.coords)), self.basis)

    def __sub__(self, other: "KClass") -> "KClass":
        o = other.to(self.basis)
        return KClass(tuple(a - b for a, b in zip(self.coords, o.coords)), self.basis)

    def __rmul__(self, k: int) -> "KClass":
        return KClass(tuple(k * a for a in self.coords), self.basis)

    def __neg__(self) -> "KClass":
        return KClass(tuple(-a for a in self.coords), self.basis)


@dataclass(frozen=True)
class Rank5Class:
    """An element of the rank-5 lattice in display order (kappa1, kappa2, alpha, delta2, delta1)."""

    coords: Vector

    def __post_init__(self) -> None:
        c = tuple(int(v) for v in self.coords)
        if len(c) != 5:
            raise DegenerateInput(f"Rank5Class needs 5 coordinates, got {len(c)}")
        object.__setattr__(self, "coords", c)


def embed_rank5(x: KClass) -> Rank5Class:
    """The rank-3 lattice sits inside rank 5 as (0, 0, alpha, delta2, delta1)."""
    a, b, c = x.to("R").coords
    return Rank5Class((0, 0, a, c, b))


# named classes
ALPHA = KClass((1, 0, 0), "R")
DELTA1 = KClass((0, 1, 0), "R")
DELTA2 = KClass((0, 0, 1), "R")
ALPHA1 = ALPHA - DELTA1
ALPHA2 = -ALPHA + DELTA1 + DELTA2
ALPHA3 = ALPHA - DELTA2
P3 = KClass((1, 0, 0), "P")
P2 = KClass((0, 1, 0), "P")
P1 = KClass((0, 0, 1), "P")
S1 = KClass((1, 0, 0), "S")
S2 = KClass((0, 1, 0), "S")
S3 = KClass((0, 0, 1), "S")

#: the standard strong class-exceptional triple
PROJECTIVE_TRIPLE = (P3, P2, P1)

#: classes of the 1-spherical cone objects S_i (cone of E_i -> E_{i+1}); these
#: live in the delta-lattice, where chi(S, S) = 0 makes the twist a transvection
SPHERICAL_1 = DELTA1
SPHERICAL_2 = DELTA2


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------

def euler_form(x: KClass, y: KClass) -> int:
    """chi(x, y), computed in the S basis (all bases agree after conversion)."""
    xv = x.to("S").coords
    yv = y.to("S").coords
    return sum(xv[i] * CHI["S"][i][j] * yv[j] for i in range(3) for j in range(3))


def symmetric_form(x: KClass, y: KClass) -> int:
    """I(x, y) = chi(x, y) + chi(y, x); equals 2 * (alpha-components product)."""
    return euler_form(x, y) + euler_form(y, x)


def i_tilde_form(x: Rank5Class, y: Rank5Class) -> int:
    return sum(
        x.coords[i] * I_TILDE[i][j] * y.coords[j] for i in range(5) for j in range(5)
    )


@dataclass(frozen=True)
class LatticeMap:
    """A unimodular integer matrix acting on the lattice, with the form it preserves.

    Rank-3 maps act in R coordinates; rank-5 maps act in the display basis.
    ``preserved_form`` is one of "chi", "I", "I_tilde" (or None when no
    preservation claim is made); preservation is verified at construction.
    """

    matrix: Matrix
    preserved_form: Union[str, None] = None

    def __post_init__(self) -> None:
        m = _mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        if det(m) not in (1, -1):
            raise NotInvertible(f"lattice map must have det +-1, got {det(m)}")
        form = {"chi": CHI["R"], "I": I_FORM, "I_tilde": I_TILDE, None: None}[
            self.preserved_form
        ]
        if form is not None and mat_mul(transpose(m), mat_mul(form, m)) != form:
            raise DegenerateInput(
                f"matrix does not preserve the {self.preserved_form} form"
            )

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: "LatticeMap") -> "LatticeMap":
        if self.rank != other.rank:
            raise DegenerateInput("cannot compose maps of different ranks")
        keep = self.preserved_form if self.preserved_form == other.preserved_form else None
        return LatticeMap(mat_mul(self.matrix, other.matrix), keep)

    def inverse(self) -> "LatticeMap":
        return LatticeMap(unimodular_inverse(self.matrix), self.preserved_form)

    def power(self, k: int) -> "LatticeMap":
        return LatticeMap(_mat_pow(self.matrix, k), self.preserved_form)

    def apply(self, x):
        if isinstance(x, KClass):
            if self.rank != 3:
                raise DegenerateInput("rank-5 map applied to a rank-3 class")
            return KClass(mat_vec(self.matrix, x.to("R").coords), "R").to(x.basis)
        if isinstance(x, Rank5Class):
            if self.rank != 5:
                raise DegenerateInput("rank-3 map applied to a rank-5 class")
            return Rank5Class(mat_vec(self.matrix, x.coords))
        raise DegenerateInput(f"cannot apply a lattice map to {type(x).__name__}")

    def is_involution(self) -> bool:
        return mat_mul(self.matrix, self.matrix) == identity_matrix(self.rank)


# ---------------------------------------------------------------------------
# Serre matrix and twists
# ---------------------------------------------------------------------------

def serre_matrix(basis: str = "R") -> LatticeMap:
    """[S] = chi^-1 chi^T in the requested basis; squares to the identity."""
    if basis not in CHI:
        raise DegenerateInput(f"basis must be one of S, P, R; got {basis!r}")
    chi = CHI[basis]
    m = mat_mul(unimodular_inverse(chi), transpose(chi))
    # stored as a plain map; chi-preservation holds in every basis but the
    # LatticeMap form check is wired to R coordinates only
    preserved = "chi" if basis == "R" else None
    return LatticeMap(m, preserved)


def twist_matrix(classes: Sequence[KClass]) -> LatticeMap:
    """The K-shadow x -> x - sum_i chi(e_i, x) e_i of a (multi-)twist, in R coordinates."""
    if not classes:
        raise DegenerateInput("twist_matrix needs at least one class")
    cols = []
    basis_vectors = [KClass((1, 0, 0), "R"), KClass((0, 1, 0), "R"), KClass((0, 0, 1), "R")]
    for ej in basis_vectors:
        img = ej
        for e in classes:
            img = img - euler_form(e, ej) * e
        cols.append(img.to("R").coords)
    m = transpose(_mat(cols))
    if det(m) not in (1, -1):
        raise NotInvertible(
            "twist matrix is not unimodular; the classes do not form an exceptional-cycle shadow"
        )
    preserved = "chi" if mat_mul(transpose(m), mat_mul(CHI["R"], m)) == CHI["R"] else None
    return LatticeMap(m, preserved)


# ---------------------------------------------------------------------------
# braid words and mutations
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"^(s[12])(?:\^(-?\d+))?$")
_SHIFT_RE = re.compile(r"^\[(-?\d+),(-?\d+),(-?\d+)\]$")

Token = tuple[str, object]


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid generators s1, s2 (and their inverses) and shift triples.

    Words act on triples from the left of the string first: "s1 s2" means
    apply s1, then s2.  Parse syntax: ``"s1 s2^-1 [1,0,2]"`` where ``^k``
    repeats a generator (negative k for the inverse) and ``[n1,n2,n3]`` is a
    shift, acting on classes by (-1)^(n_i).
    """

    tokens: tuple[Token, ...]

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        tokens: list[Token] = []
        for raw in text.replace("σ", "s").split():
            m = _TOKEN_RE.match(raw)
            if m:
                gen, exp = m.group(1), int(m.group(2) or 1)
                sign = 1 if exp >= 0 else -1
                tokens.extend((gen, sign) for _ in range(abs(exp)))
                continue
            m = _SHIFT_RE.match(raw)
            if m:
                tokens.append(("shift", tuple(int(g) for g in m.groups())))
                continue
            raise DegenerateInput(f"cannot parse braid token {raw!r}")
        return cls(tuple(tokens))

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.tokens + other.tokens)


def is_class_exceptional(triple: Sequence[KClass]) -> bool:
    """chi(e_i, e_i) = 1 for all i and chi(e_j, e_i) = 0 for i < j."""
    if len(triple) != 3:
        return False
    for i in range(3):
        if euler_form(triple[i], triple[i]) != 1:
            return False
    for i in range(3):
        for j in range(i + 1, 3):
            if euler_form(triple[j], triple[i]) != 0:
                return False
    return True


def _apply_token(triple: tuple[KClass, KClass, KClass], tok: Token):
    e1, e2, e3 = triple
    kind, val = tok
    if kind == "shift":
        n1, n2, n3 = val
        return (
            e1 if n1 % 2 == 0 else -e1,
            e2 if n2 % 2 == 0 else -e2,
            e3 if n3 % 2 == 0 else -e3,
        )
    if kind == "s1":
        if val == 1:
            return (euler_form(e1, e2) * e1 - e2, e1, e3)
        return (e2, euler_form(e1, e2) * e2 - e1, e3)
    if kind == "s2":
        if val == 1:
            return (e1, euler_form(e2, e3) * e2 - e3, e2)
        return (e1, e3, euler_form(e2, e3) * e3 - e2)
    raise DegenerateInput(f"unknown braid token {tok!r}")


def mutate(triple: Sequence[KClass], word: Union[BraidWord, str]) -> tuple[KClass, KClass, KClass]:
    """Act on a class-exceptional triple by a braid word (leftmost token first)."""
    if isinstance(word, str):
        word = BraidWord.parse(word)
    if not is_class_exceptional(triple):
        raise NotExceptional(
            "triple is not class-exceptional (unit diagonal, vanishing backward chi)"
        )
    cur = tuple(triple)
    for tok in word.tokens:
        cur = _apply_token(cur, tok)
    return cur


_SL2 = {
    ("s1", 1): _mat([(1, 1), (0, 1)]),
    ("s1", -1): _mat([(1, -1), (0, 1)]),
    ("s2", 1): _mat([(1, 0), (-1, 1)]),
    ("s2", -1): _mat([(1, 0), (1, 1)]),
}


def braid_to_sl2(word: Union[BraidWord, str]) -> Matrix:
    """Restrict the braid action to the delta-plane: the 2x2 integer matrix.

    s1 and s2 map to the delta-blocks of the inverse simple twists; shifts map
    to the identity.  Concatenation of words corresponds to the matrix product
    in word order, and (s1 s2)^6 is the identity.
    """
    if isinstance(word, str):
        word = BraidWord.parse(word)
    m = identity_matrix(2)
    for tok in word.tokens:
        if tok[0] != "shift":
            m = mat_mul(m, _SL2[tok])
    return m


# ---------------------------------------------------------------------------
# roots and reflections
# ---------------------------------------------------------------------------

def is_real_root(x: KClass) -> bool:
    """Membership in {+-alpha - (p+1) delta1 - (q+1) delta2 : p q even}.

    In R coordinates (a, b, c) this is |a| = 1 and (b+1)(c+1) even.
    """
    a, b, c = x.to("R").coords
    return abs(a) == 1 and ((b + 1) * (c + 1)) % 2 == 0


def enumerate_roots(height_bound: int) -> list[KClass]:
    """All real roots with |p|, |q| <= height_bound, in R coordinates."""
    if height_bound < 0:
        raise DegenerateInput("height_bound must be nonnegative")
    out = []
    for sign in (1, -1):
        for p in range(-height_bound, height_bound + 1):
            for q in range(-height_bound, height_bound + 1):
                if (p * q) % 2 == 0:
                    out.append(KClass((sign, -(p + 1), -(q + 1)), "R"))
    return out


def reflection(root) -> LatticeMap:
    """r_beta(x) = x - I(beta, x) beta (rank 3) or the same with I~ (rank 5)."""
    if isinstance(root, KClass):
        if not is_real_root(root):
            raise NotARoot(f"{root} is not a real root")
        beta = root.to("R").coords
        ib = mat_vec(I_FORM, beta)
        m = _mat(
            [
                [(1 if i == j else 0) - beta[i] * ib[j] for j in range(3)]
                for i in range(3)
            ]
        )
        return LatticeMap(m, "I")
    if isinstance(root, Rank5Class):
        k1, k2, a, c, b = root.coords
        if k1 != 0 or k2 != 0 or not is_real_root(KClass((a, b, c), "R")):
            raise NotARoot(
                f"{root} is not the rank-5 image of a real root (kappa parts must vanish)"
            )
        beta = root.coords
        ib = mat_vec(I_TILDE, beta)
        m = _mat(
            [
                [(1 if i == j else 0) - beta[i] * ib[j] for j in range(5)]
                for i in range(5)
            ]
        )
        return LatticeMap(m, "I_tilde")
    raise DegenerateInput(f"reflection expects KClass or Rank5Class, got {type(root).__name__}")


# rank-5 generators and distinguished elements
R_TILDE_1 = reflection(embed_rank5(ALPHA1))
R_TILDE_2 = reflection(embed_rank5(ALPHA2))
R_TILDE_3 = reflection(embed_rank5(ALPHA3))
C_TILDE = R_TILDE_1 @ R_TILDE_2 @ R_TILDE_3
TAU_1 = R_TILDE_2 @ R_TILDE_3
TAU_2 = R_TILDE_2 @ R_TILDE_1


# ---------------------------------------------------------------------------
# named group relations
# ---------------------------------------------------------------------------

def _rank3_generators() -> tuple[LatticeMap, LatticeMap, LatticeMap]:
    return (reflection(ALPHA1), reflection(ALPHA2), reflection(ALPHA3))


def _check_rank3_involutions() -> bool:
    return all(r.is_involution() for r in _rank3_generators())


def _check_rank3_coxeter_squared() -> bool:
    r1, r2, r3 = _rank3_generators()
    c = r1 @ r2 @ r3
    return (c @ c).matrix == identity_matrix(3)


def _check_coxeter_is_alpha_reflection() -> bool:
    r1, r2, r3 = _rank3_generators()
    c = (r1 @ r2 @ r3).matrix
    # r_alpha(x) = x - I(alpha, x) alpha even though alpha is not a root
    ia = mat_vec(I_FORM, ALPHA.coords)
    r_alpha = _mat(
        [
            [(1 if i == j else 0) - ALPHA.coords[i] * ia[j] for j in range(3)]
            for i in range(3)
        ]
    )
    return c == r_alpha


def _check_rank5_involutions() -> bool:
    return all(r.is_involution() for r in (R_TILDE_1, R_TILDE_2, R_TILDE_3))


def _check_elliptic_artin() -> bool:
    c2 = (C_TILDE @ C_TILDE).matrix
    for r in (R_TILDE_1, R_TILDE_2, R_TILDE_3):
        if mat_mul(r.matrix, c2) != mat_mul(c2, r.matrix):
            return False
    return True


def _check_tilde_commutator() -> bool:
    lhs = TAU_1 @ TAU_2 @ TAU_1.inverse() @ TAU_2.inverse()
    rhs = C_TILDE.power(-2)
    return lhs.matrix == rhs.matrix


def _check_c_tilde_squared_central() -> bool:
    return _check_elliptic_artin()


def _check_braid_rotation() -> bool:
    return braid_to_sl2("s1 s2") != identity_matrix(2) and braid_to_sl2(
        "s1 s2 s1 s2 s1 s2 s1 s2 s1 s2 s1 s2"
    ) == identity_matrix(2)


def _check_braid_relation() -> bool:
    t1 = mutate(PROJECTIVE_TRIPLE, "s1 s2 s1")
    t2 = mutate(PROJECTIVE_TRIPLE, "s2 s1 s2")
    return all(a.to("R") == b.to("R") for a, b in zip(t1, t2))


def _check_twist_cube_is_serre() -> bool:
    t1 = twist_matrix([SPHERICAL_1])
    t2 = twist_matrix([SPHERICAL_2])
    prod = (t1 @ t2).power(-3)
    return prod.matrix == serre_matrix("R").matrix


def _check_alpha_pair_twist() -> bool:
    t = twist_matrix([ALPHA, ALPHA])
    s_inv = serre_matrix("R").inverse()
    return t.matrix == _mat([[-v for v in row] for row in s_inv.matrix])


def _check_serre_squared() -> bool:
    s = serre_matrix("R")
    return (s @ s).matrix == identity_matrix(3)


_RELATIONS = {
    "r_i^2=1": _check_rank3_involutions,
    "(r1r2r3)^2=1": _check_rank3_coxeter_squared,
    "c=r_alpha": _check_coxeter_is_alpha_reflection,
    "r~_i^2=1": _check_rank5_involutions,
    "elliptic_artin": _check_elliptic_artin,
    "tilde-commutator=c~^-2": _check_tilde_commutator,
    "c~^2central": _check_c_tilde_squared_central,
    "(s1s2)^6=1": _check_braid_rotation,
    "s1s2s1=s2s1s2": _check_braid_relation,
    "(t_s1t_s2)^-3=serre": _check_twist_cube_is_serre,
    "t_(alpha,alpha)=-serre^-1": _check_alpha_pair_twist,
    "serre^2=1": _check_serre_squared,
}

_UNICODE_SUBS = {
    # multi-character sequences first: a superscript minus binds to the digit
    "⁻¹": "^-1",
    "⁻²": "^-2",
    "̃": "~",  # combining tilde
    "²": "^2",
    "¹": "^1",
    "σ": "s",
    "α": "alpha",
}


def _normalize_relation_id(relation_id: str) -> str:
    s = relation_id
    for k, v in _UNICODE_SUBS.items():
        s = s.replace(k, v)
    s = s.replace("⁻", "^-")
    return "".join(s.lower().split())


def relation_ids() -> tuple[str, ...]:
    """Canonical ids accepted by :func:`group_relation_check`."""
    return tuple(_RELATIONS)


def group_relation_check(relation_id: str) -> bool:
    """Verify a named group relation by exact matrix arithmetic."""
    key = _normalize_relation_id(relation_id)
    try:
        fn = _RELATIONS[key]
    except KeyError:
        raise UnknownRelation(
            f"unknown relation {relation_id!r}; known: {', '.join(_RELATIONS)}"
        ) from None
    return fn()


# ---------------------------------------------------------------------------
# one-parameter family spectrum
# ---------------------------------------------------------------------------

class ChiSpectrum(NamedTuple):
    """det(t - chi_a^-1 chi_a^T) data: monic cubic coefficients, eigenvalues, phases."""

    coefficients: tuple[float, float, float, float]
    eigenvalues: tuple[complex, complex, complex]
    phases: tuple[float, float, float]


def chi_a_spectrum(a: float) -> ChiSpectrum:
    """Spectrum of the Coxeter-type transformation of chi_a with rows (1,a,a),(0,1,a),(0,0,1).

    The characteristic polynomial factors as (t - 1)(t^2 - B t + 1) with
    B = a^3 - 3 a^2 + 2, so for 0 <= a <= 2 the eigenvalues sit on the unit
    circle with phases {0, +-arccos(B/2)/2pi}; their variance at a = 2 is
    (1/12)*3*2 = 1/2.
    """
    if not 0 <= a <= 2:
        raise DegenerateInput(f"a must lie in [0, 2], got {a}")
    b = a**3 - 3 * a**2 + 2
    coeffs = (1.0, -(b + 1.0), b + 1.0, -1.0)
    theta = math.acos(min(1.0, max(-1.0, b / 2.0)))
    lam = complex(math.cos(theta), math.sin(theta))
    eigenvalues = (1.0 + 0j, lam, lam.conjugate())
    phases = (0.0, theta / (2 * math.pi), -theta / (2 * math.pi))
    return ChiSpectrum(coeffs, eigenvalues, phases)
