"""Simply typed higher-order terms.

Two base types: ``o`` (propositions) and ``i`` (individuals, i.e. sets).
Terms follow Church: binders carry the bound variable's type, and every
variable and constant occurrence is annotated.  The logical constants
(truth, equality, the connectives and quantifiers) are primitive term
formers rather than applied constants, mirroring the source grammar they
are compiled from.

Bound names carry no semantic weight.  ``alpha_eq`` compares binder
structure by de Bruijn level, ``subst_var`` renames on capture, and
``beta_normalize`` produces the beta-normal form (no eta).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping


# ---------------------------------------------------------------- types


class Type:
    """Base class for simple types."""

    __slots__ = ()


@dataclass(frozen=True)
class PropType(Type):
    """The type of propositions."""

    def __str__(self) -> str:
        return "o"


@dataclass(frozen=True)
class IndType(Type):
    """The type of individuals; every set lives here."""

    def __str__(self) -> str:
        return "ι"


@dataclass(frozen=True)
class FnType(Type):
    dom: Type
    cod: Type

    def __str__(self) -> str:
        dom = f"({self.dom})" if isinstance(self.dom, FnType) else str(self.dom)
        return f"{dom}→{self.cod}"


PROP = PropType()
IND = IndType()


def fn(*types: Type) -> Type:
    """Right-nested function type: ``fn(a, b, c)`` is ``a -> (b -> c)``."""
    if not types:
        raise ValueError("fn() needs at least one type")
    out = types[-1]
    for t in reversed(types[:-1]):
        out = FnType(t, out)
    return out


def arg_types(t: Type) -> tuple[Type, ...]:
    """The domains of a right-nested function type, outermost first."""
    out = []
    while isinstance(t, FnType):
        out.append(t.dom)
        t = t.cod
    return tuple(out)


def result_type(t: Type) -> Type:
    while isinstance(t, FnType):
        t = t.cod
    return t


# ---------------------------------------------------------------- terms


class Term:
    """Base class for terms."""

    __slots__ = ()

    def __str__(self) -> str:
        return show_term(self)


@dataclass(frozen=True)
class Var(Term):
    name: str
    type: Type


@dataclass(frozen=True)
class Const(Term):
    name: str
    type: Type


@dataclass(frozen=True)
class Meta(Term):
    """A metavariable (matching hole).

    Lives in a namespace disjoint from ``Var``/``Const``: binders never
    bind it and ``subst_var`` never touches it.  Only the pattern-matching
    engine instantiates these, via ``patterns.subst_metas``.
    """

    name: str
    type: Type


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Lam(Term):
    var: str
    var_type: Type
    body: Term


@dataclass(frozen=True)
class Top(Term):
    """The true proposition."""

    def __str__(self) -> str:
        return "⊤"


@dataclass(frozen=True)
class Eq(Term):
    """Equality at a fixed type; both sides must have type ``at_type``."""

    lhs: Term
    rhs: Term
    at_type: Type


@dataclass(frozen=True)
class Not(Term):
    arg: Term


@dataclass(frozen=True)
class And(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Or(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Imp(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Iff(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class All(Term):
    var: str
    var_type: Type
    body: Term


@dataclass(frozen=True)
class Ex(Term):
    var: str
    var_type: Type
    body: Term


TOP = Top()

_BINARY = (Eq, And, Or, Imp, Iff)
_BINDERS = (Lam, All, Ex)


# ------------------------------------------------------------- builders


def apps(head: Term, *args: Term) -> Term:
    out = head
    for a in args:
        out = App(out, a)
    return out


def lams(binders: list[tuple[str, Type]], body: Term) -> Term:
    for name, ty in reversed(binders):
        body = Lam(name, ty, body)
    return body


def foralls(binders: list[tuple[str, Type]], body: Term) -> Term:
    for name, ty in reversed(binders):
        body = All(name, ty, body)
    return body


def exists(binders: list[tuple[str, Type]], body: Term) -> Term:
    for name, ty in reversed(binders):
        body = Ex(name, ty, body)
    return body


def imps(hyps: list[Term], concl: Term) -> Term:
    for h in reversed(hyps):
        concl = Imp(h, concl)
    return concl


def ands(conjuncts: list[Term]) -> Term:
    """Right-nested conjunction of a nonempty list."""
    out = conjuncts[-1]
    for c in reversed(conjuncts[:-1]):
        out = And(c, out)
    return out


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split nested applications into head and argument list."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def subterms(t: Term) -> Iterator[Term]:
    """All subterms, preorder, the term itself included."""
    yield t
    match t:
        case App(f, a):
            yield from subterms(f)
            yield from subterms(a)
        case Lam(_, _, b) | All(_, _, b) | Ex(_, _, b):
            yield from subterms(b)
        case Eq(l, r, _) | And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            yield from subterms(l)
            yield from subterms(r)
        case Not(a):
            yield from subterms(a)
        case _:
            pass


def constants(t: Term) -> set[Const]:
    return {s for s in subterms(t) if isinstance(s, Const)}


def metas(t: Term) -> set[Meta]:
    return {s for s in subterms(t) if isinstance(s, Meta)}


# ------------------------------------------------------- variable logic


def free_vars(t: Term) -> frozenset[tuple[str, Type]]:
    """Free variables of ``t`` as (name, type) pairs."""

    def go(t: Term, bound: frozenset[str]) -> frozenset[tuple[str, Type]]:
        match t:
            case Var(n, ty):
                return frozenset() if n in bound else frozenset([(n, ty)])
            case Const() | Meta() | Top():
                return frozenset()
            case App(f, a):
                return go(f, bound) | go(a, bound)
            case Lam(v, _, b) | All(v, _, b) | Ex(v, _, b):
                return go(b, bound | {v})
            case Eq(l, r, _) | And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                return go(l, bound) | go(r, bound)
            case Not(a):
                return go(a, bound)
        raise TypeError(f"unexpected term {t!r}")

    return go(t, frozenset())


def free_names(t: Term) -> frozenset[str]:
    return frozenset(n for n, _ in free_vars(t))


def fresh_name(base: str, avoid: set[str] | frozenset[str]) -> str:
    """``base`` itself if unused, else the first free ``base<k>``."""
    if base not in avoid:
        return base
    k = 1
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


def _rebind(t: Term, var: str, body: Term) -> Term:
    match t:
        case Lam(_, ty, _):
            return Lam(var, ty, body)
        case All(_, ty, _):
            return All(var, ty, body)
        case Ex(_, ty, _):
            return Ex(var, ty, body)
    raise TypeError(f"not a binder: {t!r}")


def subst_var(t: Term, name: str, repl: Term) -> Term:
    """Capture-avoiding substitution of ``repl`` for free ``name`` in ``t``."""
    repl_free = free_names(repl)

    def go(t: Term) -> Term:
        match t:
            case Var(n, _):
                return repl if n == name else t
            case Const() | Meta() | Top():
                return t
            case App(f, a):
                return App(go(f), go(a))
            case Lam(v, ty, b) | All(v, ty, b) | Ex(v, ty, b):
                if v == name:
                    return t
                if v in repl_free and name in free_names(b):
                    # the binder would capture a variable of repl: rename it
                    v2 = fresh_name(v, repl_free | free_names(b) | {name})
                    b = subst_var(b, v, Var(v2, ty))
                    return _rebind(t, v2, go(b))
                return _rebind(t, v, go(b))
            case Eq(l, r, ty):
                return Eq(go(l), go(r), ty)
            case And(l, r):
                return And(go(l), go(r))
            case Or(l, r):
                return Or(go(l), go(r))
            case Imp(l, r):
                return Imp(go(l), go(r))
            case Iff(l, r):
                return Iff(go(l), go(r))
            case Not(a):
                return Not(go(a))
        raise TypeError(f"unexpected term {t!r}")

    return go(t)


def beta_normalize(t: Term) -> Term:
    """The beta-normal form of ``t`` (normal-order; simple typing makes
    this total)."""
    match t:
        case Var() | Const() | Meta() | Top():
            return t
        case App(f, a):
            nf = beta_normalize(f)
            if isinstance(nf, Lam):
                return beta_normalize(subst_var(nf.body, nf.var, a))
            return App(nf, beta_normalize(a))
        case Lam(v, ty, b):
            return Lam(v, ty, beta_normalize(b))
        case Eq(l, r, ty):
            return Eq(beta_normalize(l), beta_normalize(r), ty)
        case And(l, r):
            return And(beta_normalize(l), beta_normalize(r))
        case Or(l, r):
            return Or(beta_normalize(l), beta_normalize(r))
        case Imp(l, r):
            return Imp(beta_normalize(l), beta_normalize(r))
        case Iff(l, r):
            return Iff(beta_normalize(l), beta_normalize(r))
        case Not(a):
            return Not(beta_normalize(a))
        case All(v, ty, b):
            return All(v, ty, beta_normalize(b))
        case Ex(v, ty, b):
            return Ex(v, ty, beta_normalize(b))
    raise TypeError(f"unexpected term {t!r}")


def alpha_eq(s: Term, t: Term) -> bool:
    """Equality up to renaming of bound variables.

    Binders are compared by de Bruijn level: each side carries a map from
    name to the level at which it was most recently bound, so shadowing
    and differing surface names are both handled.
    """

    def go(s: Term, t: Term, es: dict[str, int], et: dict[str, int], d: int) -> bool:
        match (s, t):
            case (Var(n1, ty1), Var(n2, ty2)):
                l1, l2 = es.get(n1), et.get(n2)
                if l1 is None and l2 is None:
                    return n1 == n2 and ty1 == ty2
                return l1 == l2
            case (Const(n1, ty1), Const(n2, ty2)):
                return n1 == n2 and ty1 == ty2
            case (Meta(n1, ty1), Meta(n2, ty2)):
                return n1 == n2 and ty1 == ty2
            case (Top(), Top()):
                return True
            case (App(f1, a1), App(f2, a2)):
                return go(f1, f2, es, et, d) and go(a1, a2, es, et, d)
            case (Lam(v1, ty1, b1), Lam(v2, ty2, b2)) | (
                All(v1, ty1, b1), All(v2, ty2, b2)
            ) | (Ex(v1, ty1, b1), Ex(v2, ty2, b2)):
                if ty1 != ty2:
                    return False
                return go(b1, b2, {**es, v1: d}, {**et, v2: d}, d + 1)
            case (Eq(l1, r1, ty1), Eq(l2, r2, ty2)):
                return ty1 == ty2 and go(l1, l2, es, et, d) and go(r1, r2, es, et, d)
            case (And(l1, r1), And(l2, r2)) | (Or(l1, r1), Or(l2, r2)) | (
                Imp(l1, r1), Imp(l2, r2)
            ) | (Iff(l1, r1), Iff(l2, r2)):
                return go(l1, l2, es, et, d) and go(r1, r2, es, et, d)
            case (Not(a1), Not(a2)):
                return go(a1, a2, es, et, d)
            case _:
                return False

    return go(s, t, {}, {}, 0)


# --------------------------------------------------------------- typing


TypingContext = Mapping[str, Type]


class HolTypeError(Exception):
    """Base class for typing failures."""


class IllTyped(HolTypeError):
    def __init__(self, location: str, expected: object, found: object):
        self.location = location
        self.expected = expected
        self.found = found
        super().__init__(f"at {location}: expected {expected}, found {found}")


class UnboundName(HolTypeError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound name {name!r}")


def type_of(t: Term, ctx: TypingContext) -> Type:
    """The unique type of ``t``.

    ``ctx`` must give a type to every free variable and every constant;
    annotations on occurrences are checked against it.  Metavariables are
    trusted at their annotation (their namespace is not ``ctx``'s).
    """

    def go(t: Term, bound: dict[str, Type], path: str) -> Type:
        match t:
            case Var(n, ty):
                declared = bound.get(n, ctx.get(n))
                if declared is None:
                    raise UnboundName(n)
                if declared != ty:
                    raise IllTyped(f"{path}:{n}", declared, ty)
                return ty
            case Const(n, ty):
                declared = ctx.get(n)
                if declared is None:
                    raise UnboundName(n)
                if declared != ty:
                    raise IllTyped(f"{path}:{n}", declared, ty)
                return ty
            case Meta(_, ty):
                return ty
            case Top():
                return PROP
            case App(f, a):
                ft = go(f, bound, path + ".fn")
                at = go(a, bound, path + ".arg")
                if not isinstance(ft, FnType):
                    raise IllTyped(path, "a function type", ft)
                if ft.dom != at:
                    raise IllTyped(path + ".arg", ft.dom, at)
                return ft.cod
            case Lam(v, ty, b):
                bt = go(b, {**bound, v: ty}, path + ".body")
                return FnType(ty, bt)
            case Eq(l, r, ty):
                lt = go(l, bound, path + ".lhs")
                rt = go(r, bound, path + ".rhs")
                if lt != ty:
                    raise IllTyped(path + ".lhs", ty, lt)
                if rt != ty:
                    raise IllTyped(path + ".rhs", ty, rt)
                return PROP
            case Not(a):
                at = go(a, bound, path + ".arg")
                if at != PROP:
                    raise IllTyped(path + ".arg", PROP, at)
                return PROP
            case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                lt = go(l, bound, path + ".lhs")
                if lt != PROP:
                    raise IllTyped(path + ".lhs", PROP, lt)
                rt = go(r, bound, path + ".rhs")
                if rt != PROP:
                    raise IllTyped(path + ".rhs", PROP, rt)
                return PROP
            case All(v, ty, b) | Ex(v, ty, b):
                bt = go(b, {**bound, v: ty}, path + ".body")
                if bt != PROP:
                    raise IllTyped(path + ".body", PROP, bt)
                return PROP
        raise TypeError(f"unexpected term {t!r}")

    return go(t, {}, "root")


def ambient_context(*terms: Term) -> dict[str, Type]:
    """A typing context collecting every constant and free variable of
    the given terms at its annotated type.  Conflicting annotations for
    one name raise ``IllTyped``."""
    ctx: dict[str, Type] = {}
    for t in terms:
        for c in sorted(constants(t), key=lambda c: c.name):
            if ctx.get(c.name, c.type) != c.type:
                raise IllTyped(c.name, ctx[c.name], c.type)
            ctx[c.name] = c.type
        for n, ty in sorted(free_vars(t), key=lambda p: p[0]):
            if ctx.get(n, ty) != ty:
                raise IllTyped(n, ctx[n], ty)
            ctx[n] = ty
    return ctx


# ------------------------------------------------------------- printing

# Precedence, loosest to tightest: iff < implies < or < and < not < eq.
# Application binds tightest; binders take maximal scope.

_MEMBER = "r2_hidden"

_LEVEL_IFF = 1
_LEVEL_IMP = 2
_LEVEL_OR = 3
_LEVEL_AND = 4
_LEVEL_NOT = 5
_LEVEL_EQ = 6
_LEVEL_APP = 7
_LEVEL_ATOM = 8


def show_type(t: Type) -> str:
    return str(t)


def show_term(t: Term) -> str:
    """Debug rendering; not a stable format."""

    def wrap(s: str, have: int, need: int) -> str:
        return f"({s})" if have < need else s

    def go(t: Term, need: int) -> str:
        match t:
            case Var(n, _) | Const(n, _):
                return n
            case Meta(n, _):
                return f"?{n}"
            case Top():
                return "⊤"
            case App(App(Const(name, _), l), r) if name == _MEMBER:
                s = f"{go(l, _LEVEL_APP)} ∈ {go(r, _LEVEL_APP)}"
                return wrap(s, _LEVEL_EQ, need)
            case App(f, a):
                s = f"{go(f, _LEVEL_APP)} {go(a, _LEVEL_ATOM)}"
                return wrap(s, _LEVEL_APP, need)
            case Lam(v, ty, b):
                s = f"λ{v}:{ty}. {go(b, 0)}"
                return wrap(s, 0, need)
            case All(v, ty, b):
                s = f"∀{v}:{ty}. {go(b, 0)}"
                return wrap(s, 0, need)
            case Ex(v, ty, b):
                s = f"∃{v}:{ty}. {go(b, 0)}"
                return wrap(s, 0, need)
            case Eq(l, r, _):
                s = f"{go(l, _LEVEL_APP)} = {go(r, _LEVEL_APP)}"
                return wrap(s, _LEVEL_EQ, need)
            case Not(a):
                return f"¬{go(a, _LEVEL_NOT)}"
            case And(l, r):
                s = f"{go(l, _LEVEL_AND + 1)} ∧ {go(r, _LEVEL_AND)}"
                return wrap(s, _LEVEL_AND, need)
            case Or(l, r):
                s = f"{go(l, _LEVEL_OR + 1)} ∨ {go(r, _LEVEL_OR)}"
                return wrap(s, _LEVEL_OR, need)
            case Imp(l, r):
                s = f"{go(l, _LEVEL_IMP + 1)} → {go(r, _LEVEL_IMP)}"
                return wrap(s, _LEVEL_IMP, need)
            case Iff(l, r):
                s = f"{go(l, _LEVEL_IFF + 1)} ↔ {go(r, _LEVEL_IFF)}"
                return wrap(s, _LEVEL_IFF, need)
        raise TypeError(f"unexpected term {t!r}")

    return go(t, 0)
