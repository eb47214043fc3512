"""The asymptotic ring J: a-function, gamma constants, t-basis
multiplication, distinguished involutions, and the map from the Hecke
algebra into J tensor A.

Truncation discipline.  a(z) is an infimum over all pairs (x, y), so a
finite scan only ever yields a certified lower bound.  A JRing is
created with a working radius L; it scans all pairs up to

    S = L + 2*len(w0) + 2          (w0 = finite longest element)

and treats a(z) as certified for len(z) <= L.  Every gamma, J-product
and phi image refuses to go past that contract instead of silently
truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RadiusExceeded
from .hecke import HeckeElement, KLTable, StructureConstants, hecke_algebra
from .laurent import Laurent, QuadExt, ZERO
from .weyl import GroupDescriptor, GroupElement, make_group

__all__ = ["AValue", "JElement", "JTensorAElement", "JRing"]


@dataclass(frozen=True)
class AValue:
    z: GroupElement
    value: int
    scan_radius: int
    certified: bool


@dataclass
class JElement:
    """Finite integer combination of t_w, tagged with its certification radius."""

    desc: GroupDescriptor
    terms: dict[GroupElement, int]
    radius: int

    def __post_init__(self):
        self.terms = {w: c for w, c in self.terms.items() if c}

    def max_length(self) -> int:
        return max((len(w.word) for w in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, JElement):
            return NotImplemented
        return self.desc == other.desc and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(
            f"{c}*t[{w}]" for w, c in sorted(self.terms.items(), key=lambda t: t[0].sort_key())
        )
        return body or "0"


@dataclass
class JTensorAElement:
    """Finite combination of t_w with Laurent coefficients (J tensor A)."""

    desc: GroupDescriptor
    terms: dict[GroupElement, Laurent]
    radius: int

    def __post_init__(self):
        self.terms = {w: c for w, c in self.terms.items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, JTensorAElement):
            return NotImplemented
        return self.desc == other.desc and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(
            f"({c})*t[{w}]" for w, c in sorted(self.terms.items(), key=lambda t: t[0].sort_key())
        )
        return body or "0"


def certification_bound(desc: GroupDescriptor, z_length: int) -> int:
    """Scan radius at which a(z) is treated as stabilized."""
    return z_length + 2 * desc.finite_longest_length + 2


class JRing:
    """J with certified-truncated multiplication at a fixed working radius."""

    def __init__(self, desc: GroupDescriptor, radius: int):
        if radius < 0:
            raise ValueError("radius must be >= 0")
        self.desc = desc
        self.radius = radius
        self.group = make_group(desc)
        self.algebra = hecke_algebra(desc)
        self.scan_radius = certification_bound(desc, radius)
        self.table = KLTable(self.group, 2 * self.scan_radius - 1)
        self.constants = StructureConstants(self.table)
        self._scans: dict[int, dict[int, int]] = {}
        self._dinv: dict[int, list[GroupElement]] = {}

    # -- a-function --------------------------------------------------------

    def _scan(self, scan_radius: int) -> dict[int, int]:
        got = self._scans.get(scan_radius)
        if got is None:
            if 2 * scan_radius - 1 > self.table.radius:
                raise RadiusExceeded(
                    f"scan radius {scan_radius} needs a KL table beyond {self.table.radius}"
                )
            got = self.constants.scan_min_exponents(scan_radius, scan_radius)
            self._scans[scan_radius] = got
        return got

    def a_function(self, z: GroupElement, scan_radius: int | None = None) -> AValue:
        """Monotone scan value of a(z); certified past the stabilization bound."""
        zlen = len(z.word)
        bound = certification_bound(self.desc, zlen)
        if scan_radius is None:
            scan_radius = min(max(bound, zlen), self.scan_radius)
        if scan_radius < zlen:
            raise ValueError(f"scan radius {scan_radius} below len(z) = {zlen}")
        mins = self._scan(scan_radius)
        zid = self.group._id_of(z.word)
        value = -mins.get(zid, 0)
        return AValue(z, value, scan_radius, scan_radius >= bound)

    def _certified_a(self, z: GroupElement) -> int:
        if len(z.word) > self.radius:
            raise RadiusExceeded(
                f"len(z) = {len(z.word)} beyond certified radius {self.radius}"
            )
        av = self.a_function(z, self.scan_radius)
        assert av.certified
        return av.value

    # -- gamma constants ---------------------------------------------------

    def gamma(self, x: GroupElement, y: GroupElement, z: GroupElement, signed: bool = False) -> int:
        """Constant term of v^a(z) h_{x,y,z} in the chosen convention."""
        a = self._certified_a(z)
        h = self.constants.h_map(x, y, signed=signed).get(z)
        if h is None:
            return 0
        return h.constant_term_after_shift(a)

    def gamma_map(self, x: GroupElement, y: GroupElement, signed: bool = False) -> dict[GroupElement, int]:
        """All nonzero gamma_{x,y,z}; needs len(x)+len(y) within the radius."""
        if len(x.word) + len(y.word) > self.radius:
            raise RadiusExceeded(
                f"support of t_x t_y may reach length {len(x.word) + len(y.word)} "
                f"beyond certified radius {self.radius}"
            )
        out = {}
        for z, h in self.constants.h_map(x, y, signed=signed).items():
            g = h.constant_term_after_shift(self._certified_a(z))
            if g:
                out[z] = g
        return out

    # -- J multiplication --------------------------------------------------

    def t(self, w: GroupElement) -> JElement:
        return JElement(self.desc, {w: 1}, self.radius)

    def j_element(self, terms: dict[GroupElement, int]) -> JElement:
        return JElement(self.desc, terms, self.radius)

    def j_multiply(self, j1: JElement, j2: JElement, signed: bool = False) -> JElement:
        if j1.desc != self.desc or j2.desc != self.desc:
            raise ValueError("elements of a different group")
        if j1.max_length() + j2.max_length() > self.radius:
            raise RadiusExceeded(
                "product support may exceed the certified radius "
                f"{self.radius}; refuse to emit an uncertified product"
            )
        out: dict[GroupElement, int] = {}
        for x, c1 in j1.terms.items():
            for y, c2 in j2.terms.items():
                for z, g in self.gamma_map(x, y, signed=signed).items():
                    s = out.get(z, 0) + c1 * c2 * g
                    if s:
                        out[z] = s
                    else:
                        out.pop(z, None)
        return JElement(self.desc, out, self.radius)

    # -- distinguished involutions ----------------------------------------

    def distinguished_involutions(self, radius: int | None = None) -> list[GroupElement]:
        """Involutions d with a(d) = len(d) - 2 deg_q P_{e,d} in the ball."""
        if radius is None:
            radius = self.radius
        if radius > self.radius:
            raise RadiusExceeded(f"radius {radius} beyond certified radius {self.radius}")
        got = self._dinv.get(radius)
        if got is not None:
            return got
        e = self.group.identity
        out = []
        for d in self.group.enumerate_ball(radius):
            if not self.group.multiply(d, d).is_identity():
                continue
            p = self.table.kl_polynomial(e, d)
            if p.is_zero():
                continue
            # stored on v-exponents, so max_exp is twice the q-degree of P
            if self._certified_a(d) == len(d.word) - p.max_exp():
                out.append(d)
        self._dinv[radius] = out
        return out

    # -- the homomorphism into J tensor A ----------------------------------

    def phi(self, x: GroupElement, signed: bool = False) -> JTensorAElement:
        """Image of the canonical basis element of x: sum over distinguished
        d and z in the same a-stratum of h_{x,d,z} t_z.

        In the signed convention each term carries an extra (-1)^len(z):
        the signed map is the unsigned one transported through v -> -1/v
        on coefficients and t_w -> (-1)^len(w) t_w on J, and the two
        semilinear twists cancel, leaving an A-linear ring map."""
        dinvs = self.distinguished_involutions(self.radius)
        for d in dinvs:
            if len(x.word) + len(d.word) > self.radius:
                raise RadiusExceeded(
                    f"len(x) + len(d) = {len(x.word) + len(d.word)} for d = {d} "
                    f"exceeds radius {self.radius}; phi would be silently truncated"
                )
        out: dict[GroupElement, Laurent] = {}
        for d in dinvs:
            ad = self._certified_a(d)
            for z, h in self.constants.h_map(x, d, signed=signed).items():
                if self._certified_a(z) != ad:
                    continue
                if signed and len(z.word) % 2:
                    h = -h
                s = out.get(z, ZERO) + h
                if s:
                    out[z] = s
                else:
                    out.pop(z, None)
        return JTensorAElement(self.desc, out, self.radius)

    def phi_of_element(self, h: HeckeElement, signed: bool = False) -> JTensorAElement:
        """phi extended A-linearly to a canonical-basis element."""
        basis = "Csigned" if signed else "Cprime"
        h = self.algebra.to_basis(h, basis, self.table)
        out: dict[GroupElement, Laurent] = {}
        for x, c in h.terms.items():
            for z, hz in self.phi(x, signed=signed).terms.items():
                s = out.get(z, ZERO) + c * hz
                if s:
                    out[z] = s
                else:
                    out.pop(z, None)
        return JTensorAElement(self.desc, out, self.radius)

    def jta_multiply(self, a: JTensorAElement, b: JTensorAElement, signed: bool = False) -> JTensorAElement:
        """Product in J tensor A, truncated to the certified radius."""
        out: dict[GroupElement, Laurent] = {}
        for x, c1 in a.terms.items():
            for y, c2 in b.terms.items():
                c = c1 * c2
                for z, h in self.constants.h_map(x, y, signed=signed).items():
                    if len(z.word) > self.radius:
                        continue
                    g = h.constant_term_after_shift(self._certified_a(z))
                    if not g:
                        continue
                    s = out.get(z, ZERO) + c.scale(g)
                    if s:
                        out[z] = s
                    else:
                        out.pop(z, None)
        return JTensorAElement(self.desc, out, self.radius)

    # -- specialization ----------------------------------------------------

    def phi_specialized(self, x: GroupElement, q: Fraction, signed: bool = False) -> dict[GroupElement, QuadExt]:
        q = Fraction(q)
        if q <= 0:
            raise ValueError("q must be positive")
        return {z: c.specialize(q) for z, c in self.phi(x, signed=signed).terms.items()}

    def specialized_rank(self, xs: list[GroupElement], q: Fraction, signed: bool = False) -> int:
        """Rank of the specialized phi images of the given basis elements.

        For square q the matrix is evaluated at v = +sqrt(q) over Q;
        otherwise Q[v]/(v^2 - q) is a field and elimination runs there.
        """
        q = Fraction(q)
        rows = []
        support: dict[GroupElement, int] = {}
        images = [self.phi(x, signed=signed) for x in xs]
        for img in images:
            for z in img.terms:
                support.setdefault(z, len(support))
        sqrt_q = _exact_sqrt(q)
        for img in images:
            row = [None] * len(support)
            for z, c in img.terms.items():
                row[support[z]] = c.specialize(q)
            zero = QuadExt(0, 0, q)
            row = [zero if v is None else v for v in row]
            if sqrt_q is not None:
                rows.append([v.eval_sqrt(sqrt_q) for v in row])
            else:
                rows.append(row)
        if sqrt_q is not None:
            return _rank_fractions(rows)
        return _rank_quadext(rows, q)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    import math

    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _rank_fractions(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / pr[col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


def _rank_quadext(rows: list[list[QuadExt]], q: Fraction) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next(
            (i for i in range(rank, len(rows)) if not rows[i][col].is_zero()), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        inv = pr[col].inverse()
        for i in range(rank + 1, len(rows)):
            if rows[i][col].is_zero():
                continue
            f = rows[i][col] * inv
            rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank
