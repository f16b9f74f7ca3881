"""Higher-order pattern matching for scheme instantiation.

A pattern is a term whose metavariables are only ever applied to
spines of distinct bound variables.  Matching a pattern against a
ground term is decidable with most general unifiers, which is all the
generality scheme application needs: the scheme's outer universals
become metavariables, the conjecture is ground, and the matcher
recovers the instantiation or reports precisely why there is none.

Disagreement pairs are solved eagerly left to right.  Solving the pair
``M x1 .. xn  =?  t`` binds ``M := \\x1 .. xn. t`` provided every free
variable of ``t`` is among the spine; a leftover bound variable cannot
be abstracted and raises ``OccursEscape``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from . import hol
from .hol import (
    All, And, App, Const, Eq, Ex, Iff, Imp, Lam, Meta, Not, Or, Top, Var,
)


class MatchError(Exception):
    pass


class NotAPattern(MatchError):
    """A metavariable spine is not distinct bound variables."""


class NoMatch(MatchError):
    """The pair set has no solution."""


class OccursEscape(NoMatch):
    """A bound variable outside the spine occurs in the opposite side."""

    def __init__(self, meta: str, var: str):
        self.meta = meta
        self.var = var
        super().__init__(f"bound variable {var!r} escapes the spine of "
                         f"?{meta}")


class ShapeMismatch(MatchError):
    """Scheme and conjecture disagree beyond hypothesis peeling."""


@dataclass(frozen=True)
class DisagreementPair:
    """Two terms to be made equal, well-typed under a shared context of
    bound variables (innermost last)."""

    context: tuple[tuple[str, hol.Type], ...]
    lhs: hol.Term
    rhs: hol.Term


def subst_metas(t: hol.Term, mapping: Mapping[Meta, hol.Term]) -> hol.Term:
    """Replace metavariables by their assigned terms.  Assignments must
    be closed, so no capture analysis is needed."""
    match t:
        case Meta():
            return mapping.get(t, t)
        case Var() | Const() | Top():
            return t
        case App(f, a):
            return App(subst_metas(f, mapping), subst_metas(a, mapping))
        case Lam(v, ty, b):
            return Lam(v, ty, subst_metas(b, mapping))
        case All(v, ty, b):
            return All(v, ty, subst_metas(b, mapping))
        case Ex(v, ty, b):
            return Ex(v, ty, subst_metas(b, mapping))
        case Eq(l, r, ty):
            return Eq(subst_metas(l, mapping), subst_metas(r, mapping), ty)
        case Not(a):
            return Not(subst_metas(a, mapping))
        case And(l, r):
            return And(subst_metas(l, mapping), subst_metas(r, mapping))
        case Or(l, r):
            return Or(subst_metas(l, mapping), subst_metas(r, mapping))
        case Imp(l, r):
            return Imp(subst_metas(l, mapping), subst_metas(r, mapping))
        case Iff(l, r):
            return Iff(subst_metas(l, mapping), subst_metas(r, mapping))
    raise TypeError(f"unexpected term {t!r}")


class Substitution:
    """An idempotent assignment of closed terms to metavariables."""

    def __init__(self, mapping: Mapping[Meta, hol.Term]):
        for m, value in mapping.items():
            if hol.free_vars(value):
                raise ValueError(f"assignment for ?{m.name} is not closed")
            if hol.metas(value):
                raise ValueError(f"assignment for ?{m.name} contains "
                                 "metavariables")
            found = hol.type_of(value, hol.ambient_context(value))
            if found != m.type:
                raise hol.IllTyped(f"?{m.name}", m.type, found)
        self._map = dict(mapping)

    def apply(self, t: hol.Term) -> hol.Term:
        return hol.beta_normalize(subst_metas(t, self._map))

    def __getitem__(self, m: Meta) -> hol.Term:
        return self._map[m]

    def get(self, m: Meta) -> hol.Term | None:
        return self._map.get(m)

    def __contains__(self, m: Meta) -> bool:
        return m in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __iter__(self) -> Iterator[Meta]:
        return iter(sorted(self._map, key=lambda m: m.name))

    def items(self) -> list[tuple[Meta, hol.Term]]:
        return sorted(self._map.items(), key=lambda kv: kv[0].name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Substitution):
            return NotImplemented
        if self._map.keys() != other._map.keys():
            return False
        return all(hol.alpha_eq(v, other._map[m])
                   for m, v in self._map.items())

    def __repr__(self) -> str:
        inner = ", ".join(f"?{m.name} := {v}" for m, v in self.items())
        return f"Substitution({inner})"


def is_pattern(t: hol.Term, bound: Iterable[str] = ()) -> bool:
    """True when every metavariable occurrence is applied to distinct
    variables bound within ``t`` or listed in ``bound``."""

    def walk(t: hol.Term, bound: frozenset[str]) -> bool:
        head, args = hol.spine(t)
        if isinstance(head, Meta):
            names = [a.name for a in args if isinstance(a, Var)]
            if len(names) != len(args) or len(set(names)) != len(names):
                return False
            if not all(n in bound for n in names):
                return False
            return True
        match t:
            case Var() | Const() | Meta() | Top():
                return True
            case App(f, a):
                return walk(f, bound) and walk(a, bound)
            case Lam(v, _, b) | All(v, _, b) | Ex(v, _, b):
                return walk(b, bound | {v})
            case Eq(l, r, _) | And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                return walk(l, bound) and walk(r, bound)
            case Not(a):
                return walk(a, bound)
        raise TypeError(f"unexpected term {t!r}")

    return walk(t, frozenset(bound))


def pattern_match(pairs: Iterable[DisagreementPair]) -> Substitution:
    """Solve the pairs, matching pattern left sides against ground right
    sides.  Raises ``NotAPattern``, ``OccursEscape`` or ``NoMatch``."""
    sigma: dict[Meta, hol.Term] = {}

    def resolve(t: hol.Term) -> hol.Term:
        # only re-normalize when a solved metavariable heads the spine
        head, _ = hol.spine(t)
        if isinstance(head, Meta) and head in sigma:
            return hol.beta_normalize(subst_metas(t, sigma))
        return t

    def solve(ctx: dict[str, hol.Type], lhs: hol.Term,
              rhs: hol.Term) -> None:
        lhs = resolve(lhs)
        head, args = hol.spine(lhs)
        if isinstance(head, Meta):
            solve_flex(ctx, head, args, rhs)
            return
        match lhs, rhs:
            case Var(a, _), Var(b, _):
                if a != b or lhs.type != rhs.type:
                    raise NoMatch(f"variables {a!r} and {b!r} differ")
            case Const(a, _), Const(b, _):
                if a != b or lhs.type != rhs.type:
                    raise NoMatch(f"constants {a!r} and {b!r} differ")
            case Top(), Top():
                pass
            case App(f1, a1), App(f2, a2):
                solve(ctx, f1, f2)
                solve(ctx, a1, a2)
            case (Lam(_, ty1, _), Lam(_, ty2, _)) | \
                 (All(_, ty1, _), All(_, ty2, _)) | \
                 (Ex(_, ty1, _), Ex(_, ty2, _)):
                if ty1 != ty2:
                    raise NoMatch(f"binder types {ty1} and {ty2} differ")
                name = lhs.var
                if name in ctx or name != rhs.var:
                    name = hol.fresh_name(
                        lhs.var, set(ctx) | hol.free_names(lhs.body)
                        | hol.free_names(rhs.body))
                fresh = Var(name, ty1)
                solve({**ctx, name: ty1},
                      hol.subst_var(lhs.body, lhs.var, fresh),
                      hol.subst_var(rhs.body, rhs.var, fresh))
            case Eq(l1, r1, ty1), Eq(l2, r2, ty2):
                if ty1 != ty2:
                    raise NoMatch(f"equality types {ty1} and {ty2} differ")
                solve(ctx, l1, l2)
                solve(ctx, r1, r2)
            case Not(a1), Not(a2):
                solve(ctx, a1, a2)
            case (And(l1, r1), And(l2, r2)) | (Or(l1, r1), Or(l2, r2)) | \
                 (Imp(l1, r1), Imp(l2, r2)) | (Iff(l1, r1), Iff(l2, r2)):
                solve(ctx, l1, l2)
                solve(ctx, r1, r2)
            case _:
                raise NoMatch(f"rigid heads differ: {lhs} against {rhs}")

    def solve_flex(ctx: dict[str, hol.Type], meta: Meta,
                   args: list[hol.Term], rhs: hol.Term) -> None:
        spine_names = []
        for a in args:
            if not (isinstance(a, Var) and a.name in ctx):
                raise NotAPattern(f"?{meta.name} applied to {a}, not a "
                                  "bound variable")
            spine_names.append(a.name)
        if len(set(spine_names)) != len(spine_names):
            raise NotAPattern(f"?{meta.name} applied to repeated variables")
        for name, _ in sorted(hol.free_vars(rhs), key=lambda p: p[0]):
            if name not in spine_names:
                raise OccursEscape(meta.name, name)
        value = hol.lams([(a.name, a.type) for a in args], rhs)
        found = hol.type_of(value, hol.ambient_context(value))
        if found != meta.type:
            raise NoMatch(f"?{meta.name} wants type {meta.type}, solution "
                          f"has {found}")
        sigma[meta] = value

    for pair in pairs:
        if hol.metas(pair.rhs):
            raise ValueError("right sides must be ground")
        ctx = dict(pair.context)
        solve(ctx, hol.beta_normalize(subst_metas(pair.lhs, sigma)),
              hol.beta_normalize(pair.rhs))
    return Substitution(sigma)


def strip_outer_quantifiers(formula: hol.Term,
                            k: int) -> tuple[list[Meta], hol.Term]:
    """Replace the ``k`` outermost universals by fresh metavariables
    named after the binders.  Returns the metavariables in binding
    order together with the opened matrix."""
    metas: list[Meta] = []
    used: set[str] = set()
    t = formula
    for i in range(k):
        if not isinstance(t, All):
            raise ShapeMismatch(f"wanted {k} outer universals, found {i}")
        name = hol.fresh_name(t.var, used)
        used.add(name)
        m = Meta(name, t.var_type)
        metas.append(m)
        t = hol.subst_var(t.body, t.var, m)
    return metas, t


@dataclass(frozen=True)
class SchemeMatch:
    """Recovered instantiation plus the scheme hypotheses it leaves
    open, already instantiated where the substitution reaches them."""

    substitution: Substitution
    side_conditions: tuple[hol.Term, ...]


def recover_scheme_instantiation(scheme: hol.Term, conjecture: hol.Term,
                                 k: int) -> SchemeMatch:
    """Match ``conjecture`` against ``scheme`` with its ``k`` outer
    universals opened.  When the full matrix does not match, top-level
    hypotheses are peeled off one implication at a time and returned as
    side conditions."""
    if hol.metas(conjecture):
        raise ValueError("conjecture must be ground")
    _, matrix = strip_outer_quantifiers(scheme, k)
    hypotheses: list[hol.Term] = []
    goal = hol.beta_normalize(conjecture)
    while True:
        try:
            sigma = pattern_match([DisagreementPair((), matrix, goal)])
            break
        except NoMatch as e:
            if isinstance(matrix, Imp):
                hypotheses.append(matrix.lhs)
                matrix = matrix.rhs
                continue
            raise ShapeMismatch(
                "conjecture fits no suffix of the scheme matrix") from e
    side = tuple(sigma.apply(h) for h in hypotheses)
    return SchemeMatch(sigma, side)
