"""Canonical forms: scattered normal forms, shuffle minimal representations,
equality, and segment decisions.

A canonical form is an alternating sequence of scattered parts and
shuffle nodes whose block sets are minimal: no block contains a convex
copy of the shuffle.  On the tame fragment (scattered parts built from
finite atoms, N, N*, Z only) structural equality of canonical forms
decides isomorphism.  Scattered parts that need an infinite-power atom
(Pow) fall outside that guarantee: equality degrades to
StructuralOnly, never to a wrong verdict, and segment queries refuse.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cache

from .terms import (
    Empty,
    Finite,
    Omega,
    OmegaStar,
    OrderTerm,
    Product,
    Shuffle,
    Single,
    Sum,
    Zeta,
    desugar,
)


class StuckError(Exception):
    """No sound rewrite applies to a residual product; no verdict is given."""

    def __init__(self, subterm: OrderTerm):
        super().__init__(f"no rewrite applies to {subterm!r}")
        self.subterm = subterm


class UnsupportedError(Exception):
    """The query leaves the fragment where verdicts are guaranteed."""


class InternalInvariantError(Exception):
    """A canonical form violated its own invariants; this is a bug."""


# ---------------------------------------------------------------------------
# scattered normal forms


class ScatAtom:
    __slots__ = ()


@dataclass(frozen=True)
class Fin(ScatAtom):
    n: int


@dataclass(frozen=True)
class W(ScatAtom):
    """N."""


@dataclass(frozen=True)
class Wstar(ScatAtom):
    """N*."""


@dataclass(frozen=True)
class Zat(ScatAtom):
    """Z."""


@dataclass(frozen=True)
class Pow(ScatAtom):
    """kind-many copies of body; kind is "N", "N~", or "Z"."""

    kind: str
    body: tuple[ScatAtom, ...]


def _fix_tail(out: list[ScatAtom]) -> None:
    # Junction rewrites, each strictly shortens: k+k' -> (k+k'),
    # k+N -> N, N*+k -> N*, N*+N -> Z.
    while len(out) >= 2:
        a, b = out[-2], out[-1]
        if isinstance(a, Fin) and isinstance(b, Fin):
            out[-2:] = [Fin(a.n + b.n)]
        elif isinstance(a, Fin) and isinstance(b, W):
            out[-2:] = [W()]
        elif isinstance(a, Wstar) and isinstance(b, Fin):
            out[-2:] = [Wstar()]
        elif isinstance(a, Wstar) and isinstance(b, W):
            out[-2:] = [Zat()]
        else:
            break


def _concat_atoms(*parts: tuple[ScatAtom, ...]) -> tuple[ScatAtom, ...]:
    out: list[ScatAtom] = []
    for part in parts:
        for atom in part:
            out.append(atom)
            _fix_tail(out)
    return tuple(out)


def _repeat_atoms(body: tuple[ScatAtom, ...], n: int) -> tuple[ScatAtom, ...]:
    result: tuple[ScatAtom, ...] = ()
    piece = body
    while n:
        if n & 1:
            result = _concat_atoms(result, piece)
        n >>= 1
        if n:
            piece = _concat_atoms(piece, piece)
    return result


_KAPPA_ATOM = {"N": W(), "N~": Wstar(), "Z": Zat()}
_KAPPA_TERM = {Omega(): "N", OmegaStar(): "N~", Zeta(): "Z"}
_REV_KIND = {"N": "N~", "N~": "N", "Z": "Z"}


def _pow_atoms(kind: str, body: tuple[ScatAtom, ...]) -> tuple[ScatAtom, ...]:
    # Rotation: if moving the boundary component across the repetition
    # shortens the body (a junction fires), peel it off and repeat.
    if kind == "N":
        prefix: tuple[ScatAtom, ...] = ()
        while len(body) > 1:
            rot = _concat_atoms(body[1:], body[:1])
            if len(rot) >= len(body):
                break
            prefix = _concat_atoms(prefix, body[:1])
            body = rot
        return _concat_atoms(prefix, (Pow("N", body),))
    if kind == "N~":
        suffix: tuple[ScatAtom, ...] = ()
        while len(body) > 1:
            rot = _concat_atoms(body[-1:], body[:-1])
            if len(rot) >= len(body):
                break
            suffix = _concat_atoms(body[-1:], suffix)
            body = rot
        return _concat_atoms((Pow("N~", body),), suffix)
    return (Pow("Z", body),)


def _contains_shuffle(t: OrderTerm) -> bool:
    match t:
        case Shuffle():
            return True
        case Sum(a, b):
            return _contains_shuffle(a) or _contains_shuffle(b)
        case Product(x, y):
            return _contains_shuffle(x) or _contains_shuffle(y)
        case _:
            return False


def scat_normalize(t: OrderTerm) -> tuple[ScatAtom, ...] | None:
    """Normal form of a scattered term; None if any shuffle occurs in t."""
    t = desugar(t)
    if _contains_shuffle(t):
        return None
    return _scat(t)


def _scat(t: OrderTerm) -> tuple[ScatAtom, ...]:
    match t:
        case Empty():
            return ()
        case Single():
            return (Fin(1),)
        case Finite(n):
            return (Fin(n),)
        case Omega():
            return (W(),)
        case OmegaStar():
            return (Wstar(),)
        case Zeta():
            return (Zat(),)
        case Sum(a, b):
            return _concat_atoms(_scat(a), _scat(b))
        case Product(x, y):
            return _scat_product(x, y)
    raise AssertionError(f"unreachable: {t!r}")


def _scat_product(x: OrderTerm, y: OrderTerm) -> tuple[ScatAtom, ...]:
    match x:
        case Single():
            return _scat(y)
        case Finite(n):
            return _repeat_atoms(_scat(y), n)
        case Sum(a, b):
            return _concat_atoms(_scat_product(a, y), _scat_product(b, y))
        case Product(a, b):
            return _scat_product(a, Product(b, y))
        case Omega() | OmegaStar() | Zeta():
            fib = _scat(y)
            if not fib:
                return ()
            kind = _KAPPA_TERM[x]
            if len(fib) == 1 and isinstance(fib[0], Fin):
                return (_KAPPA_ATOM[kind],)
            return _pow_atoms(kind, fib)
    raise AssertionError(f"unreachable index: {x!r}")


def _atom_reverse(a: ScatAtom) -> ScatAtom:
    match a:
        case Fin() | Zat():
            return a
        case W():
            return Wstar()
        case Wstar():
            return W()
        case Pow(kind, body):
            return Pow(_REV_KIND[kind], _atoms_reverse(body))
    raise AssertionError


def _atoms_reverse(atoms: tuple[ScatAtom, ...]) -> tuple[ScatAtom, ...]:
    return tuple(_atom_reverse(a) for a in reversed(atoms))


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True)
class Scat:
    atoms: tuple[ScatAtom, ...]


@dataclass(frozen=True)
class Shuf:
    blocks: tuple["CanonicalForm", ...]


@dataclass(frozen=True)
class CanonicalForm:
    components: tuple[Scat | Shuf, ...]

    @property
    def tame(self) -> bool:
        return all(
            all(not isinstance(a, Pow) for a in c.atoms)
            if isinstance(c, Scat)
            else all(b.tame for b in c.blocks)
            for c in self.components
        )


EMPTY_FORM = CanonicalForm(())

_KIND_RANK = {"N": 0, "N~": 1, "Z": 2}


def _atom_key(a: ScatAtom):
    match a:
        case Fin(n):
            return (0, n)
        case W():
            return (1, 0)
        case Wstar():
            return (2, 0)
        case Zat():
            return (3, 0)
        case Pow(kind, body):
            return (4, _KIND_RANK[kind], tuple(_atom_key(x) for x in body))
    raise AssertionError


def _comp_key(c: Scat | Shuf):
    if isinstance(c, Scat):
        return (0, tuple(_atom_key(a) for a in c.atoms))
    return (1, tuple(_form_key(b) for b in c.blocks))


def _form_key(cf: CanonicalForm):
    return tuple(_comp_key(c) for c in cf.components)


# --- equality (structural, modulo bounded unrolling of Pow atoms) ---


class Equality(Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    STRUCTURAL_ONLY = "StructuralOnly"


def _unroll_once(cf: CanonicalForm) -> list[CanonicalForm]:
    out = []
    for ci, comp in enumerate(cf.components):
        if not isinstance(comp, Scat):
            continue
        for ai, atom in enumerate(comp.atoms):
            if not isinstance(atom, Pow):
                continue
            reps = []
            if atom.kind in ("N", "Z"):
                reps.append(_concat_atoms(atom.body, (atom,)))
            if atom.kind in ("N~", "Z"):
                reps.append(_concat_atoms((atom,), atom.body))
            for rep in reps:
                atoms2 = _concat_atoms(comp.atoms[:ai], rep, comp.atoms[ai + 1:])
                comps2 = cf.components[:ci] + (Scat(atoms2),) + cf.components[ci + 1:]
                out.append(CanonicalForm(comps2))
    return out


def _unroll_variants(cf: CanonicalForm, depth: int = 2) -> frozenset[CanonicalForm]:
    seen = {cf}
    frontier = [cf]
    for _ in range(depth):
        nxt = []
        for f in frontier:
            for g in _unroll_once(f):
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        frontier = nxt
    return frozenset(seen)


def _eq(a: CanonicalForm, b: CanonicalForm) -> bool:
    if a == b:
        return True
    if a.tame and b.tame:
        return False
    return bool(_unroll_variants(a) & _unroll_variants(b))


def cf_equal(a: CanonicalForm, b: CanonicalForm) -> Equality:
    """Equal decides isomorphism on the tame fragment.

    When either side carries a Pow atom, a non-match means only "not
    proven": minimal-representation uniqueness covers the tame shapes,
    so the verdict degrades to StructuralOnly instead of NotEqual.
    """
    if _eq(a, b):
        return Equality.EQUAL
    if a.tame and b.tame:
        return Equality.NOT_EQUAL
    return Equality.STRUCTURAL_ONLY


# --- component concatenation with merge rules ---


def _scat_is_block(scat: Scat, shuf: Shuf) -> bool:
    j = CanonicalForm((scat,))
    return any(_eq(j, b) for b in shuf.blocks)


def _push(out: list, comp) -> None:
    if isinstance(comp, Scat):
        if out and isinstance(out[-1], Scat):
            comp = Scat(_concat_atoms(out.pop().atoms, comp.atoms))
        if comp.atoms:
            out.append(comp)
        return
    # comp is a shuffle node
    if out and out[-1] == comp:
        return
    if (
        len(out) >= 2
        and isinstance(out[-1], Scat)
        and out[-2] == comp
        and _scat_is_block(out[-1], comp)
    ):
        # Q[A] + s + Q[A] with s a block of A: the junction copy of s
        # dissolves into the surrounding dense mixture.
        out.pop()
        return
    out.append(comp)


def _concat_components(*lists) -> tuple:
    out: list = []
    for comps in lists:
        for comp in comps:
            _push(out, comp)
    return tuple(out)


def _repeat_form(cf: CanonicalForm, n: int) -> CanonicalForm:
    result: tuple = ()
    piece = cf.components
    while n:
        if n & 1:
            result = _concat_components(result, piece)
        n >>= 1
        if n:
            piece = _concat_components(piece, piece)
    return CanonicalForm(result)


# --- shuffle normalization (minimal representations) ---


def _dedup_sort(blocks) -> tuple[CanonicalForm, ...]:
    out: list[CanonicalForm] = []
    for b in sorted(blocks, key=_form_key):
        if not any(_eq(b, kept) for kept in out):
            out.append(b)
    return tuple(out)


def _blockset_eq(a: tuple[CanonicalForm, ...], b: tuple[CanonicalForm, ...]) -> bool:
    if a == b:
        return True
    if len(a) != len(b):
        return False
    remaining = list(b)
    for x in a:
        for i, y in enumerate(remaining):
            if _eq(x, y):
                del remaining[i]
                break
        else:
            return False
    return True


def _try_flatten(blocks: tuple[CanonicalForm, ...]) -> tuple[CanonicalForm, ...] | None:
    for j in blocks:
        inner_sets = [c for c in j.components if isinstance(c, Shuf)]
        if not inner_sets:
            continue
        pieces = [b for b in blocks if b != j]
        for shuf in inner_sets:
            pieces.extend(shuf.blocks)
        for comp in j.components:
            if isinstance(comp, Scat) and comp.atoms:
                pieces.append(CanonicalForm((comp,)))
        candidate = _dedup_sort(pieces)
        # Flattening a composite block is only an isomorphism when the
        # combined block set reproduces one of the block's own inner
        # sets.  Firing unconditionally would collapse Q[1 + Q[Z]] to
        # Q[1, Z], which is wrong: the chunk 1 + Q[Z] contains no
        # convex copy of Q[1, Z], so { 1 + Q[Z] } is already minimal.
        for shuf in inner_sets:
            if _blockset_eq(candidate, shuf.blocks):
                return candidate
    return None


def _canon_shuffle(blocks) -> Shuf:
    blocks = _dedup_sort(blocks)
    while True:
        candidate = _try_flatten(blocks)
        if candidate is None:
            break
        blocks = candidate
    for j in blocks:
        for comp in j.components:
            if isinstance(comp, Shuf) and _blockset_eq(comp.blocks, blocks):
                raise InternalInvariantError(
                    "a block of a normalized shuffle contains a convex copy of the shuffle"
                )
    return Shuf(blocks)


# --- full canonicalization ---


def canonicalize(t: OrderTerm) -> CanonicalForm:
    """Rewrite t to its canonical form.

    Raises StuckError when a residual product admits no sound rewrite
    (the junction of the fiber is neither empty nor one of its blocks);
    a wrong form is never returned.
    """
    return _canon(desugar(t))


@cache
def _canon(t: OrderTerm) -> CanonicalForm:
    match t:
        case Empty():
            return EMPTY_FORM
        case Single() | Finite() | Omega() | OmegaStar() | Zeta():
            return CanonicalForm((Scat(_scat(t)),))
        case Sum(a, b):
            return CanonicalForm(_concat_components(_canon(a).components, _canon(b).components))
        case Shuffle(blocks):
            return CanonicalForm((_canon_shuffle([_canon(b) for b in blocks]),))
        case Product(x, y):
            return _canon_product(x, y)
    raise AssertionError(f"unreachable: {t!r}")


def _canon_product(x: OrderTerm, y: OrderTerm) -> CanonicalForm:
    match x:
        case Single():
            return _canon(y)
        case Finite(n):
            return _repeat_form(_canon(y), n)
        case Sum(a, b):
            return CanonicalForm(
                _concat_components(
                    _canon_product(a, y).components, _canon_product(b, y).components
                )
            )
        case Product(a, b):
            return _canon_product(a, Product(b, y))
        case Shuffle(blocks):
            return _canon(Shuffle(tuple(Product(i, y) for i in blocks)))
        case Omega() | OmegaStar() | Zeta():
            return _kappa_product(_KAPPA_TERM[x], x, y)
    raise AssertionError(f"unreachable index: {x!r}")


def _kappa_product(kind: str, x: OrderTerm, y: OrderTerm) -> CanonicalForm:
    cf = _canon(y)
    shuf_at = [i for i, c in enumerate(cf.components) if isinstance(c, Shuf)]
    if not shuf_at:
        atoms = cf.components[0].atoms if cf.components else ()
        if not atoms:
            return EMPTY_FORM
        if len(atoms) == 1 and isinstance(atoms[0], Fin):
            return CanonicalForm((Scat((_KAPPA_ATOM[kind],)),))
        return CanonicalForm((Scat(_pow_atoms(kind, atoms)),))
    if len(shuf_at) != 1:
        raise StuckError(Product(x, y))
    i = shuf_at[0]
    left = cf.components[:i]
    shuf = cf.components[i]
    right = cf.components[i + 1:]
    l_atoms = left[0].atoms if left else ()
    r_atoms = right[0].atoms if right else ()
    # Consecutive copies of the fiber meet as R + L; that junction must
    # dissolve into the dense mixture for the product to collapse.
    junction = _concat_atoms(r_atoms, l_atoms)
    if junction and not _scat_is_block(Scat(junction), shuf):
        raise StuckError(Product(x, y))
    if kind == "N":
        return CanonicalForm(left + (shuf,))
    if kind == "N~":
        return CanonicalForm((shuf,) + right)
    return CanonicalForm((shuf,))


# --- conversion back to terms ---


def _atom_term(a: ScatAtom) -> OrderTerm:
    match a:
        case Fin(1):
            return Single()
        case Fin(n):
            return Finite(n)
        case W():
            return Omega()
        case Wstar():
            return OmegaStar()
        case Zat():
            return Zeta()
        case Pow(kind, body):
            head = {"N": Omega(), "N~": OmegaStar(), "Z": Zeta()}[kind]
            return Product(head, _atoms_term(body))
    raise AssertionError


def _fold_sum(parts: list[OrderTerm]) -> OrderTerm:
    if not parts:
        return Empty()
    out = parts[0]
    for p in parts[1:]:
        out = Sum(out, p)
    return out


def _atoms_term(atoms: tuple[ScatAtom, ...]) -> OrderTerm:
    return _fold_sum([_atom_term(a) for a in atoms])


def cf_to_term(cf: CanonicalForm) -> OrderTerm:
    """A term denoting the same order as the canonical form."""
    parts = []
    for comp in cf.components:
        if isinstance(comp, Scat):
            parts.append(_atoms_term(comp.atoms))
        else:
            parts.append(Shuffle(tuple(cf_to_term(b) for b in comp.blocks)))
    return _fold_sum(parts)


def reverse_form(cf: CanonicalForm) -> CanonicalForm:
    """Mirror image of a canonical form (stays canonical)."""
    comps = []
    for comp in reversed(cf.components):
        if isinstance(comp, Scat):
            comps.append(Scat(_atoms_reverse(comp.atoms)))
        else:
            comps.append(Shuf(_dedup_sort(reverse_form(b) for b in comp.blocks)))
    return CanonicalForm(tuple(comps))


# --- segment decisions (tame fragment only) ---


def _atom_initial(a: ScatAtom, b: ScatAtom) -> bool:
    # Is the order of atom a a (possibly improper) initial segment of b?
    match b:
        case Fin(k):
            return isinstance(a, Fin) and a.n <= k
        case W():
            return isinstance(a, (Fin, W))
        case Wstar():
            return isinstance(a, Wstar)
        case Zat():
            return isinstance(a, (Wstar, Zat))
    raise AssertionError


def _atoms_initial(x: tuple[ScatAtom, ...], y: tuple[ScatAtom, ...]) -> bool:
    if not x:
        return True
    if len(x) > len(y):
        return False
    if x[:-1] != y[: len(x) - 1]:
        return False
    return _atom_initial(x[-1], y[len(x) - 1])


def _is_initial(s: tuple, t: tuple) -> bool:
    if not s:
        return True
    if not t:
        return False
    d, c = s[0], t[0]
    if d == c:
        if _is_initial(s[1:], t[1:]):
            return True
        if isinstance(c, Shuf) and len(s) > 1:
            # A cut inside the shuffle leaves the whole shuffle plus an
            # initial chunk of one block; nothing of t beyond c survives.
            return any(_is_initial(s[1:], j.components) for j in c.blocks)
        return False
    if len(s) == 1 and isinstance(d, Scat) and isinstance(c, Scat):
        return _atoms_initial(d.atoms, c.atoms)
    return False


def is_initial_segment(s: CanonicalForm, t: CanonicalForm) -> bool:
    """Does s belong to the family of initial segments of t?"""
    if not (s.tame and t.tame):
        raise UnsupportedError("segment decisions require tame canonical forms")
    return _is_initial(s.components, t.components)


def is_final_segment(s: CanonicalForm, t: CanonicalForm) -> bool:
    """Does s belong to the family of final segments of t?"""
    if not (s.tame and t.tame):
        raise UnsupportedError("segment decisions require tame canonical forms")
    return _is_initial(reverse_form(s).components, reverse_form(t).components)
