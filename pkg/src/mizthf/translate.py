"""Compile statements into higher-order terms.

Types become predicates over individuals: ``set`` is the vacuous class,
a mode application is the mode's constant partially applied, and
attributes conjoin onto their base class.  Quantifiers relativize to the
bound variable's class; guards that reduce to literal truth are dropped
(so ``for x being set holds p`` is plain universal quantification).
That, plus beta-reducing the guard application itself, is the only
simplification performed.

The prefix compiles to outermost quantifiers: object variables like
bound variables, function variables with a typing guard relativizing
their graph, predicate variables with no guard at all.

Choice terms apply ``eps`` to the class; a comprehension with n binders
applies ``replSep_n`` to the n binder classes (each abstracted over the
earlier binders), the map, and the guard.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import hol
from .declarations import (
    choice, member, replsep_name, replsep_type,
)
from .hol import All, And, Const, Eq, Ex, Imp, IND, Lam, PROP, TOP, Var
from .mizar import (
    MEMBER, Attr, ExBeing, ForBeing, Fraenkel, FunConstApp, FunDecl,
    FunVarApp, MAnd, MEq, MIff, MImp, MIn, MNot, MOr, MProp, MStatement,
    MTerm, MType, Mode, NonAttr, ObjConst, ObjDecl, ObjVar, PredConstApp,
    PredDecl, PredVarApp, SetType, Signature, The,
)


class TranslationError(Exception):
    pass


@dataclass(frozen=True)
class TransEnv:
    """Translation-time scope: the signature, the statement variables
    currently in scope with their target types, and the comprehension
    arity limit."""

    sig: Signature
    scope: dict[str, hol.Type] = field(default_factory=dict)
    max_arity: int = 6

    def bind(self, name: str, ty: hol.Type) -> TransEnv:
        return TransEnv(self.sig, {**self.scope, name: ty}, self.max_arity)

    def avoid(self) -> set[str]:
        return set(self.scope) | set(self.sig.names())

    def const(self, name: str) -> hol.Term:
        entry = self.sig.lookup(name)
        if entry is None:
            raise TranslationError(f"unknown constant {name!r}")
        return Const(name, entry.hol_type())

    def var(self, name: str) -> hol.Term:
        ty = self.scope.get(name)
        if ty is None:
            raise TranslationError(f"variable {name!r} not in scope")
        return Var(name, ty)


def apply_class(cls: hol.Term, subject: hol.Term) -> hol.Term:
    """The class predicate applied to a subject, beta-reduced."""
    return hol.beta_normalize(hol.App(cls, subject))


def translate_type(t: MType, env: TransEnv) -> hol.Term:
    """A type as a class: a term of type ``i -> o``.

    The lambda's bound variable is fresh for everything in scope, so it
    never captures in the embedded argument translations.
    """
    x = hol.fresh_name("x", env.avoid())
    xv = Var(x, IND)
    match t:
        case SetType():
            return Lam(x, IND, TOP)
        case Mode(name, args):
            targs = [translate_term(a, env) for a in args]
            return Lam(x, IND, hol.apps(env.const(name), xv, *targs))
        case Attr(name, base):
            cls = translate_type(base, env)
            return Lam(x, IND,
                       And(hol.App(env.const(name), xv), apply_class(cls, xv)))
        case NonAttr(name, base):
            cls = translate_type(base, env)
            return Lam(x, IND,
                       And(hol.Not(hol.App(env.const(name), xv)),
                           apply_class(cls, xv)))
    raise TypeError(f"unexpected type {t!r}")


def translate_term(t: MTerm, env: TransEnv) -> hol.Term:
    match t:
        case ObjVar(name):
            return env.var(name)
        case ObjConst(name):
            return env.const(name)
        case FunVarApp(name, args):
            return hol.apps(env.var(name),
                            *(translate_term(a, env) for a in args))
        case FunConstApp(name, args):
            return hol.apps(env.const(name),
                            *(translate_term(a, env) for a in args))
        case The(mtype):
            return choice(translate_type(mtype, env))
        case Fraenkel(binders, body, guard):
            return translate_fraenkel(binders, body, guard, env)
    raise TypeError(f"unexpected term {t!r}")


def translate_fraenkel(binders, body, guard, env: TransEnv) -> hol.Term:
    n = len(binders)
    if n < 1:
        raise TranslationError("comprehension needs at least one binder")
    if n > env.max_arity:
        raise TranslationError(
            f"comprehension with {n} binders exceeds the arity limit "
            f"{env.max_arity}; raise --max-arity to allow it")
    # binder i's class, abstracted over the earlier binders
    classes: list[hol.Term] = []
    inner = env
    for i, (name, mt) in enumerate(binders):
        cls = translate_type(mt, inner)
        classes.append(hol.lams([(b, IND) for b, _ in binders[:i]], cls))
        inner = inner.bind(name, IND)
    lam_binders = [(b, IND) for b, _ in binders]
    return hol.apps(
        Const(replsep_name(n), replsep_type(n)),
        *classes,
        hol.lams(lam_binders, translate_term(body, inner)),
        hol.lams(lam_binders, translate_prop(guard, inner)))


def translate_prop(p: MProp, env: TransEnv) -> hol.Term:
    match p:
        case PredVarApp(name, args):
            return hol.apps(env.var(name),
                            *(translate_term(a, env) for a in args))
        case PredConstApp(name, args):
            if name == MEMBER:
                l, r = args
                return member(translate_term(l, env),
                              translate_term(r, env))
            return hol.apps(env.const(name),
                            *(translate_term(a, env) for a in args))
        case MEq(l, r):
            return Eq(translate_term(l, env), translate_term(r, env), IND)
        case MIn(l, r):
            return member(translate_term(l, env), translate_term(r, env))
        case MNot(a):
            return hol.Not(translate_prop(a, env))
        case MAnd(l, r):
            return And(translate_prop(l, env), translate_prop(r, env))
        case MOr(l, r):
            return hol.Or(translate_prop(l, env), translate_prop(r, env))
        case MImp(l, r):
            return Imp(translate_prop(l, env), translate_prop(r, env))
        case MIff(l, r):
            return hol.Iff(translate_prop(l, env), translate_prop(r, env))
        case ForBeing(var, mt, body):
            guard = apply_class(translate_type(mt, env), Var(var, IND))
            inner = translate_prop(body, env.bind(var, IND))
            return All(var, IND, inner if guard == TOP else Imp(guard, inner))
        case ExBeing(var, mt, body):
            guard = apply_class(translate_type(mt, env), Var(var, IND))
            inner = translate_prop(body, env.bind(var, IND))
            return Ex(var, IND, inner if guard == TOP else And(guard, inner))
    raise TypeError(f"unexpected proposition {p!r}")


def translate_statement(s: MStatement, sig: Signature,
                        max_arity: int = 6) -> hol.Term:
    """The whole statement as a closed proposition, prefix outermost.

    Assumes ``well_formed(s, sig)`` is clean; the result is beta-normal
    and has type ``o`` under the signature's constants.
    """
    env = TransEnv(sig, {}, max_arity)

    def go(i: int, env: TransEnv) -> hol.Term:
        if i == len(s.prefix):
            return translate_prop(s.body, env)
        decl = s.prefix[i]
        match decl:
            case ObjDecl(name, mt):
                guard = apply_class(translate_type(mt, env), Var(name, IND))
                rest = go(i + 1, env.bind(name, IND))
                return All(name, IND,
                           rest if guard == TOP else Imp(guard, rest))
            case FunDecl(name, args, result):
                fty = hol.fn(*([IND] * len(args)), IND)
                arg_classes = [translate_type(a, env) for a in args]
                res_class = translate_type(result, env)
                avoid = env.avoid()
                xs = []
                for k in range(1, len(args) + 1):
                    xk = hol.fresh_name(f"x{k}", avoid)
                    avoid.add(xk)
                    xs.append(Var(xk, IND))
                fvar = Var(name, fty)
                typing = apply_class(res_class, hol.apps(fvar, *xs))
                for cls, x in zip(reversed(arg_classes), reversed(xs)):
                    guard = apply_class(cls, x)
                    if guard != TOP:
                        typing = Imp(guard, typing)
                    typing = All(x.name, IND, typing)
                rest = go(i + 1, env.bind(name, fty))
                return All(name, fty, Imp(typing, rest))
            case PredDecl(name, args):
                pty = hol.fn(*([IND] * len(args)), PROP)
                rest = go(i + 1, env.bind(name, pty))
                return All(name, pty, rest)
        raise TypeError(f"unexpected declaration {decl!r}")

    return go(0, env)


__all__ = [
    "TransEnv", "TranslationError", "apply_class", "translate_type",
    "translate_term", "translate_prop", "translate_statement",
]
