"""Extended affine Weyl groups of types A1~ and A2~.

The Coxeter part is handled generically through the integral reflection
representation attached to a Coxeter matrix with entries in {2, 3, oo},
so every element carries a matrix and its inverse; canonical (ShortLex
least) reduced words are extracted greedily from left-descent sets.
The length-zero extension Omega acts by diagram automorphisms and sits
on the right: an element is a pair (coxeter word, omega).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import GroupMismatch, UnsupportedType

__all__ = [
    "GroupDescriptor",
    "GroupElement",
    "WeylGroup",
    "make_group",
    "bruhat_leq",
]

SUPPORTED_TYPES = ("A1~", "A2~")

# Coxeter matrices; 0 stands for infinity.
_COXETER = {
    "A1~": ((1, 0), (0, 1)),
    "A2~": ((1, 3, 3), (3, 1, 3), (3, 3, 1)),
}

# Omega realized as Z/k acting by diagram automorphisms.
_OMEGA_PERMS = {
    "A1~": [(0, 1), (1, 0)],
    "A2~": [(0, 1, 2), (1, 2, 0), (2, 0, 1)],
}

# Longest length in the finite Weyl group, used for certification bounds.
_FINITE_LONGEST = {"A1~": 1, "A2~": 3}


@dataclass(frozen=True)
class GroupDescriptor:
    affine_type: str
    extended: bool = False

    def __post_init__(self):
        if self.affine_type not in SUPPORTED_TYPES:
            raise UnsupportedType(f"unsupported affine type {self.affine_type!r}")

    @property
    def generator_count(self) -> int:
        return len(_COXETER[self.affine_type])

    @property
    def omega_order(self) -> int:
        return len(_OMEGA_PERMS[self.affine_type]) if self.extended else 1

    @property
    def finite_longest_length(self) -> int:
        return _FINITE_LONGEST[self.affine_type]

    def to_json(self) -> dict:
        return {"affine_type": self.affine_type, "extended": self.extended}

    @classmethod
    def from_json(cls, data: dict) -> "GroupDescriptor":
        return cls(data["affine_type"], bool(data.get("extended", False)))


@dataclass(frozen=True)
class GroupElement:
    """An element in canonical form: ShortLex-least reduced word + omega part."""

    desc: GroupDescriptor
    word: tuple[int, ...]
    omega: int = 0

    def __len__(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word and self.omega == 0

    def sort_key(self):
        return (len(self.word), self.word, self.omega)

    def to_json(self) -> dict:
        return {"word": list(self.word), "omega": self.omega}

    def __str__(self) -> str:
        body = "".join(str(i) for i in self.word) or "e"
        return body if self.omega == 0 else f"{body}@{self.omega}"


def _mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


class WeylGroup:
    """Handle for one (extended) affine Weyl group; elements are interned.

    Coxeter parts are identified by dense integer ids; the tables
    (canonical word, matrices, descent sets, neighbor links) are memo
    caches that only ever grow, so reads after a warm-up are safe for
    concurrent use.
    """

    def __init__(self, desc: GroupDescriptor):
        self.desc = desc
        n = desc.generator_count
        self.rank = n
        cox = _COXETER[desc.affine_type]
        # off-diagonal coefficients of the reflection action
        self._coef = tuple(
            tuple(0 if cox[i][j] == 2 else (1 if cox[i][j] == 3 else 2) for j in range(n))
            for i in range(n)
        )
        self._gen_mats = []
        for i in range(n):
            rows = []
            for k in range(n):
                if k != i:
                    rows.append(tuple(1 if j == k else 0 for j in range(n)))
                else:
                    rows.append(tuple(-1 if j == i else self._coef[i][j] for j in range(n)))
            self._gen_mats.append(tuple(rows))
        if desc.extended:
            for perm in _OMEGA_PERMS[desc.affine_type]:
                for i in range(n):
                    for j in range(n):
                        if cox[i][j] != cox[perm[i]][perm[j]]:
                            raise UnsupportedType("omega action is not a diagram automorphism")

        # interning tables for Coxeter parts
        self._index: dict[tuple[int, ...], int] = {(): 0}
        self._words: list[tuple[int, ...]] = [()]
        self._mats = [_mat_identity(n)]
        self._invmats = [_mat_identity(n)]
        self._ldesc: list[frozenset[int]] = [frozenset()]
        self._rmul_memo: dict[tuple[int, int], int] = {}
        self._lmul_memo: dict[tuple[int, int], int] = {}
        self._inv_memo: dict[int, int] = {}

    # -- element constructors --------------------------------------------

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self.desc, ())

    def generator(self, i: int) -> GroupElement:
        if not 0 <= i < self.rank:
            raise ValueError(f"no generator {i}")
        return GroupElement(self.desc, (i,))

    def generators(self) -> list[GroupElement]:
        return [self.generator(i) for i in range(self.rank)]

    def omega_element(self, k: int) -> GroupElement:
        if not 0 <= k < self.desc.omega_order:
            raise ValueError(f"no omega element {k}")
        return GroupElement(self.desc, (), k)

    def omega_elements(self) -> list[GroupElement]:
        return [self.omega_element(k) for k in range(self.desc.omega_order)]

    def element(self, word, omega: int = 0) -> GroupElement:
        """Build an element from an arbitrary (not necessarily reduced) word."""
        i = 0
        for s in word:
            i = self._rmul(i, int(s))
        if not 0 <= omega < self.desc.omega_order:
            raise ValueError(f"no omega element {omega}")
        return GroupElement(self.desc, self._words[i], omega)

    def from_json(self, data: dict) -> GroupElement:
        return self.element(data["word"], int(data.get("omega", 0)))

    # -- Coxeter-part machinery ------------------------------------------

    def _check(self, g: GroupElement) -> None:
        if g.desc != self.desc:
            raise GroupMismatch(f"element of {g.desc} used with group {self.desc}")

    def _id_of(self, word: tuple[int, ...]) -> int:
        got = self._index.get(word)
        if got is not None:
            return got
        i = 0
        for s in word:
            i = self._rmul(i, s)
        if self._words[i] != word:
            raise ValueError(f"{word} is not a canonical reduced word")
        return i

    def _intern(self, mat, invmat) -> int:
        word = self._normal_form(invmat)
        got = self._index.get(word)
        if got is not None:
            return got
        idx = len(self._words)
        self._index[word] = idx
        self._words.append(word)
        self._mats.append(mat)
        self._invmats.append(invmat)
        self._ldesc.append(self._left_desc_from_invmat(invmat))
        return idx

    def _left_desc_from_invmat(self, invmat) -> frozenset[int]:
        # s_i is a left descent iff w^-1(alpha_i) is a negative root,
        # i.e. column i of the inverse matrix is <= 0.
        n = self.rank
        return frozenset(
            i for i in range(n) if all(invmat[k][i] <= 0 for k in range(n))
        )

    def _normal_form(self, invmat) -> tuple[int, ...]:
        n = self.rank
        ident = _mat_identity(n)
        letters = []
        cur = invmat
        while cur != ident:
            for i in range(n):
                if all(cur[k][i] <= 0 for k in range(n)):
                    letters.append(i)
                    # (s_i * w)^-1 = w^-1 * s_i
                    cur = _mat_mul(cur, self._gen_mats[i])
                    break
            else:
                raise AssertionError("non-identity element with no left descent")
        return tuple(letters)

    def _rmul(self, i: int, s: int) -> int:
        key = (i, s)
        got = self._rmul_memo.get(key)
        if got is not None:
            return got
        mat = _mat_mul(self._mats[i], self._gen_mats[s])
        invmat = _mat_mul(self._gen_mats[s], self._invmats[i])
        j = self._intern(mat, invmat)
        self._rmul_memo[key] = j
        self._rmul_memo[(j, s)] = i
        return j

    def _lmul(self, s: int, i: int) -> int:
        key = (s, i)
        got = self._lmul_memo.get(key)
        if got is not None:
            return got
        mat = _mat_mul(self._gen_mats[s], self._mats[i])
        invmat = _mat_mul(self._invmats[i], self._gen_mats[s])
        j = self._intern(mat, invmat)
        self._lmul_memo[key] = j
        self._lmul_memo[(s, j)] = i
        return j

    def _inverse_id(self, i: int) -> int:
        got = self._inv_memo.get(i)
        if got is None:
            got = self._intern(self._invmats[i], self._mats[i])
            self._inv_memo[i] = got
            self._inv_memo[got] = i
        return got

    # -- public operations ------------------------------------------------

    def omega_perm(self, k: int) -> tuple[int, ...]:
        if self.desc.extended:
            return _OMEGA_PERMS[self.desc.affine_type][k]
        if k != 0:
            raise ValueError("group is not extended")
        return tuple(range(self.rank))

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a)
        self._check(b)
        perm = self.omega_perm(a.omega)
        i = self._id_of(a.word)
        for s in b.word:
            i = self._rmul(i, perm[s])
        omega = (a.omega + b.omega) % self.desc.omega_order
        return GroupElement(self.desc, self._words[i], omega)

    def inverse(self, a: GroupElement) -> GroupElement:
        self._check(a)
        inv_omega = (-a.omega) % self.desc.omega_order
        perm = self.omega_perm(inv_omega)
        i = self._id_of(a.word)
        j = self._inverse_id(i)
        # (w * om)^-1 = om^-1 * w^-1 = perm(w^-1) * om^-1
        k = 0
        for s in self._words[j]:
            k = self._rmul(k, perm[s])
        return GroupElement(self.desc, self._words[k], inv_omega)

    def left_descents(self, a: GroupElement) -> frozenset[int]:
        self._check(a)
        return self._ldesc[self._id_of(a.word)]

    def right_descents(self, a: GroupElement) -> frozenset[int]:
        self._check(a)
        inv = self._inverse_id(self._id_of(a.word))
        base = self._ldesc[inv]
        # right multiplication by s goes through the omega action
        perm = self.omega_perm(a.omega)
        inv_perm = [0] * self.rank
        for i, p in enumerate(perm):
            inv_perm[p] = i
        return frozenset(inv_perm[s] for s in base)

    def length(self, a: GroupElement) -> int:
        self._check(a)
        return len(a.word)

    def enumerate_ball(self, radius: int) -> list[GroupElement]:
        """All elements of length <= radius, sorted by (length, word, omega)."""
        if radius < 0:
            raise ValueError("radius must be >= 0")
        seen = {0}
        frontier = [0]
        strata = [[0]]
        for _ in range(radius):
            nxt = []
            for i in frontier:
                for s in range(self.rank):
                    j = self._rmul(i, s)
                    if j not in seen and len(self._words[j]) > len(self._words[i]):
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
            strata.append(sorted(nxt, key=lambda i: self._words[i]))
        out = []
        for stratum in strata:
            for i in stratum:
                for k in range(self.desc.omega_order):
                    out.append(GroupElement(self.desc, self._words[i], k))
        return out

    # -- Bruhat order ------------------------------------------------------

    def bruhat_leq(self, y: GroupElement, w: GroupElement) -> bool:
        """Bruhat order; elements with distinct omega parts are incomparable."""
        self._check(y)
        self._check(w)
        if y.omega != w.omega:
            return False
        return self.bruhat_leq_via_word(y, w.word)

    def bruhat_leq_via_word(self, y: GroupElement, word: tuple[int, ...]) -> bool:
        """Subword-property comparison of y against one reduced word."""
        self._check(y)
        yid = self._id_of(y.word)
        return self._bruhat_rec(yid, tuple(word), 0)

    def _bruhat_rec(self, yid: int, word: tuple[int, ...], pos: int) -> bool:
        # memoless linear scan: either strip the leading letter from both
        # sides (when it is a descent of y) or from w only
        while True:
            ylen = len(self._words[yid])
            if ylen == 0:
                return True
            if ylen > len(word) - pos:
                return False
            s = word[pos]
            if s in self._ldesc[yid]:
                yid = self._lmul(s, yid)
            pos += 1


@lru_cache(maxsize=None)
def _group_cache(desc: GroupDescriptor) -> WeylGroup:
    return WeylGroup(desc)


def make_group(desc: GroupDescriptor) -> WeylGroup:
    """Return the (memoized) group handle for a supported descriptor."""
    return _group_cache(desc)


def bruhat_leq(y: GroupElement, w: GroupElement) -> bool:
    if y.desc != w.desc:
        raise GroupMismatch("elements of different groups are incomparable")
    return make_group(y.desc).bruhat_leq(y, w)
