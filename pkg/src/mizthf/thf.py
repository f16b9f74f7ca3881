"""Assemble and emit THF0 problem files.

A problem carries declarations (each may bring a defining equation and
named axioms), user axioms, and one conjecture.  ``assemble_problem``
includes exactly the support the formulas demand: membership is always
declared, choice comes in with its axiom iff ``eps`` occurs, and
``sethood`` plus the ``replSep_n`` operators and their axioms come in
iff a comprehension constant occurs.  The Element-of mode's sethood
axiom rides along only when sethood itself is present, keeping the
demand rule exact.

Emission is deterministic: same problem, same bytes.  Source names are
mangled to THF0 atomic words through a per-problem table (lower-case
initial, ``_N`` suffixes on collision); bound variables get upper-case
initials with suffixes against shadowing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from . import hol
from .declarations import (
    Declaration, SETHOOD, base_declarations, gen_replSep_axioms,
    gen_replSep_decl,
)
from .hol import (
    All, And, App, Const, Eq, Ex, FnType, Iff, Imp, Lam, Meta, Not, Or,
    Top, Var,
)
from .mizar import Signature


class UndeclaredConstant(Exception):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no declaration source for constant {name!r}")


@dataclass(frozen=True)
class Problem:
    """Declarations in dependency order, axioms, one conjecture."""

    name: str
    declarations: tuple[Declaration, ...]
    axioms: tuple[tuple[str, hol.Term], ...]
    conjecture: tuple[str, hol.Term]


_REPLSEP_RE = re.compile(r"replSep_([1-9][0-9]*)$")


def assemble_problem(conjecture: hol.Term,
                     axioms: list[tuple[str, hol.Term]],
                     sig: Signature,
                     name: str = "problem",
                     conjecture_name: str = "goal") -> Problem:
    """Build a problem around translated formulas.

    Every constant occurring in the formulas must be either part of the
    fixed family or declared in ``sig``.  Occurring constants whose
    annotation disagrees with the declaration raise ``IllTyped``.
    """
    occurring: dict[str, hol.Type] = {}
    for term in [conjecture] + [t for _, t in axioms]:
        for c in sorted(hol.constants(term), key=lambda c: c.name):
            if occurring.get(c.name, c.type) != c.type:
                raise hol.IllTyped(c.name, occurring[c.name], c.type)
            occurring[c.name] = c.type

    base = {d.name: d for d in base_declarations(sig)}
    arities = sorted(
        int(m.group(1)) for n in occurring
        if (m := _REPLSEP_RE.fullmatch(n)))
    fraenkel = bool(arities) or SETHOOD in occurring

    decls: list[Declaration] = [base["r2_hidden"]]
    if "eps" in occurring:
        decls.append(base["eps"])
    if fraenkel:
        decls.append(base[SETHOOD])
    for n in arities:
        decl = gen_replSep_decl(n)
        decls.append(replace(decl, axioms=gen_replSep_axioms(n)))

    handled = {d.name for d in decls} | {"eps", SETHOOD}
    user: list[Declaration] = []
    for cname in sorted(occurring):
        if cname in handled:
            continue
        if cname == sig.elementof:
            decl = base[cname]
            if not fraenkel:
                # drop the sethood axiom when no comprehension demands it
                decl = replace(decl, axioms=tuple(
                    ax for ax in decl.axioms
                    if not ax[0].endswith("_sethood")))
            user.append(decl)
            continue
        entry = sig.lookup(cname)
        if entry is None:
            raise UndeclaredConstant(cname)
        declared = entry.hol_type()
        if declared != occurring[cname]:
            raise hol.IllTyped(cname, declared, occurring[cname])
        user.append(Declaration(cname, declared))

    for decl in decls + user:
        if decl.name in occurring and occurring[decl.name] != decl.type:
            raise hol.IllTyped(decl.name, decl.type, occurring[decl.name])

    return Problem(name, tuple(decls + user), tuple(axioms),
                   (conjecture_name, conjecture))


# --------------------------------------------------------------- emission


class MangleTable:
    """Deterministic bijection from source names to THF0 atomic words."""

    def __init__(self) -> None:
        self._by_source: dict[str, str] = {}
        self._used: set[str] = set()

    def get(self, source: str) -> str:
        hit = self._by_source.get(source)
        if hit is not None:
            return hit
        out = self._claim(_mangle_lower(source))
        self._by_source[source] = out
        return out

    def claim_formula_name(self, source: str) -> str:
        """Formula names are not bijective per source; every claim gets
        a unique word."""
        return self._claim(_mangle_lower(source))

    def _claim(self, base: str) -> str:
        out = base
        n = 1
        while out in self._used:
            n += 1
            out = f"{base}_{n}"
        self._used.add(out)
        return out

    def items(self) -> list[tuple[str, str]]:
        return sorted(self._by_source.items())


def _mangle_lower(source: str) -> str:
    cleaned = "".join(c if c.isalnum() or c == "_" else "_" for c in source)
    if not cleaned or not cleaned[0].isalpha():
        cleaned = "c" + cleaned
    if not cleaned[0].islower():
        cleaned = cleaned[0].lower() + cleaned[1:]
    return cleaned


def _mangle_upper(source: str) -> str:
    cleaned = "".join(c if c.isalnum() or c == "_" else "_" for c in source)
    if not cleaned or not cleaned[0].isalpha():
        cleaned = "X" + cleaned
    if not cleaned[0].isupper():
        cleaned = cleaned[0].upper() + cleaned[1:]
    return cleaned


def render_type(t: hol.Type) -> str:
    match t:
        case hol.PropType():
            return "$o"
        case hol.IndType():
            return "$i"
        case FnType(dom, cod):
            dom_s = render_type(dom)
            if isinstance(dom, FnType):
                dom_s = f"({dom_s})"
            return f"{dom_s} > {render_type(cod)}"
    raise TypeError(f"unexpected type {t!r}")


_QUANT = {All: "!", Ex: "?", Lam: "^"}
_BINOP = {And: "&", Or: "|", Imp: "=>", Iff: "<=>"}

# contexts: "top" (whole formula), "body" (after a binder's colon),
# "operand" (inside an application or beside a binary operator)


def render_formula(t: hol.Term, consts: MangleTable) -> str:
    def go(t: hol.Term, env: dict[str, str], ctx: str) -> str:
        match t:
            case Var(n, _):
                try:
                    return env[n]
                except KeyError:
                    raise ValueError(f"open term: free variable {n!r}") from None
            case Const(n, _):
                return consts.get(n)
            case Meta(n, _):
                raise ValueError(f"cannot emit metavariable {n!r}")
            case Top():
                return "$true"
            case App():
                head, args = hol.spine(t)
                parts = [go(s, env, "operand") for s in [head, *args]]
                return f"({' @ '.join(parts)})"
            case All() | Ex() | Lam():
                quant = _QUANT[type(t)]
                binders = []
                active = set(env.values())
                while isinstance(t, (All, Ex, Lam)) and _QUANT[type(t)] == quant:
                    base = _mangle_upper(t.var)
                    v, n = base, 1
                    while v in active:
                        n += 1
                        v = f"{base}_{n}"
                    active.add(v)
                    binders.append((t.var, v, t.var_type))
                    env = {**env, t.var: v}
                    t = t.body
                decls = ", ".join(f"{v}: {render_type(ty)}"
                                  for _, v, ty in binders)
                s = f"{quant} [{decls}] : {go(t, env, 'body')}"
                return f"({s})" if ctx == "operand" else s
            case Eq(l, r, _):
                s = f"{go(l, env, 'operand')} = {go(r, env, 'operand')}"
                return s if ctx == "top" else f"({s})"
            case Not(a):
                return f"~ {go(a, env, 'operand')}"
            case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                op = _BINOP[type(t)]
                s = f"{go(l, env, 'operand')} {op} {go(r, env, 'operand')}"
                return s if ctx == "top" else f"({s})"
        raise TypeError(f"unexpected term {t!r}")

    return go(t, {}, "top")


def emit_thf(problem: Problem) -> str:
    """The problem as THF0 text: type lines for every declaration, then
    defining equations, declaration axioms, user axioms, conjecture."""
    consts = MangleTable()
    names = MangleTable()
    for decl in problem.declarations:
        consts.get(decl.name)

    lines: list[str] = []
    for decl in problem.declarations:
        fname = names.claim_formula_name(f"{decl.name}_tp")
        lines.append(
            f"thf({fname}, type, {consts.get(decl.name)}: "
            f"{render_type(decl.type)}).")
    for decl in problem.declarations:
        if decl.definition is not None:
            fname = names.claim_formula_name(f"{decl.name}_def")
            eq = Eq(Const(decl.name, decl.type), decl.definition, decl.type)
            lines.append(
                f"thf({fname}, definition, {render_formula(eq, consts)}).")
    for decl in problem.declarations:
        for ax_name, ax in decl.axioms:
            fname = names.claim_formula_name(ax_name)
            lines.append(
                f"thf({fname}, axiom, {render_formula(ax, consts)}).")
    for ax_name, ax in problem.axioms:
        fname = names.claim_formula_name(ax_name)
        lines.append(
            f"thf({fname}, axiom, {render_formula(ax, consts)}).")
    cname, conj = problem.conjecture
    fname = names.claim_formula_name(cname)
    lines.append(
        f"thf({fname}, conjecture, {render_formula(conj, consts)}).")
    return "\n".join(lines) + "\n"
