"""Miller pattern matching and scheme instantiation recovery."""

from __future__ import annotations

import random

import pytest

from generators import planted_problem, random_closed_prop
from mizthf import hol
from mizthf.declarations import member
from mizthf.hol import (
    All, And, App, Const, Eq, Ex, IllTyped, Imp, Lam, Meta, Not, Or, Top,
    Var, IND, PROP, apps, fn, lams,
)
from mizthf.patterns import (
    DisagreementPair, MatchError, NoMatch, NotAPattern, OccursEscape,
    SchemeMatch, ShapeMismatch, Substitution, is_pattern, pattern_match,
    recover_scheme_instantiation, strip_outer_quantifiers, subst_metas,
)

i, o = IND, PROP
c1 = Const("c1", i)
c2 = Const("c2", i)
p1 = Const("p1", fn(i, o))
f1 = Const("f1", fn(i, i))


def pair(lhs, rhs, ctx=()):
    return DisagreementPair(tuple(ctx), lhs, rhs)


# ------------------------------------------------------------ patterns


def test_is_pattern_accepts_distinct_bound_spines():
    P = Meta("P", fn(i, i, o))
    assert is_pattern(Meta("A", i))
    assert is_pattern(lams([("x", i), ("y", i)],
                           apps(P, Var("x", i), Var("y", i))))
    assert is_pattern(All("x", i, Ex("y", i,
                          apps(P, Var("y", i), Var("x", i)))))
    assert is_pattern(apps(P, Var("x", i), Var("y", i)), bound=("x", "y"))
    assert is_pattern(App(p1, c1))


def test_is_pattern_rejects_bad_spines():
    P = Meta("P", fn(i, i, o))
    x = Var("x", i)
    assert not is_pattern(apps(P, x, x), bound=("x",))
    assert not is_pattern(apps(P, x, c1), bound=("x",))
    assert not is_pattern(apps(P, x, Var("y", i)), bound=("x",))
    assert not is_pattern(
        Lam("x", i, apps(P, Var("x", i), App(f1, Var("x", i)))))


def test_subst_metas_is_structural():
    A = Meta("A", i)
    t = All("x", i, Eq(Var("x", i), A, i))
    out = subst_metas(t, {A: c1})
    assert out == All("x", i, Eq(Var("x", i), c1, i))
    assert subst_metas(t, {}) == t


# ------------------------------------------------------------ matching


def test_match_zero_order():
    A = Meta("A", i)
    sigma = pattern_match([pair(Eq(A, c1, i), Eq(c2, c1, i))])
    assert sigma[A] == c2


def test_match_under_binder_is_spine_expanded():
    P = Meta("P", fn(i, o))
    lhs = All("x", i, App(P, Var("x", i)))
    rhs = All("x", i, App(p1, Var("x", i)))
    sigma = pattern_match([pair(lhs, rhs)])
    assert hol.alpha_eq(sigma[P], Lam("x", i, App(p1, Var("x", i))))
    assert sigma[P] != p1


def test_match_reorders_spines():
    R = Meta("R", fn(i, i, o))
    lhs = All("x", i, All("y", i, apps(R, Var("y", i), Var("x", i))))
    rhs = All("x", i, All("y", i, Eq(Var("x", i), App(f1, Var("y", i)), i)))
    sigma = pattern_match([pair(lhs, rhs)])
    want = lams([("y", i), ("x", i)],
                Eq(Var("x", i), App(f1, Var("y", i)), i))
    assert hol.alpha_eq(sigma[R], want)


def test_match_mismatched_binder_names_align():
    P = Meta("P", fn(i, o))
    lhs = Lam("x", i, App(P, Var("x", i)))
    rhs = Lam("y", i, App(p1, Var("y", i)))
    sigma = pattern_match([pair(lhs, rhs)])
    assert hol.alpha_eq(sigma[P], Lam("z", i, App(p1, Var("z", i))))


def test_match_is_consistent_across_occurrences():
    A = Meta("A", i)
    good = pattern_match([pair(And(Eq(A, A, i), Eq(A, c1, i)),
                               And(Eq(c1, c1, i), Eq(c1, c1, i)))])
    assert good[A] == c1
    with pytest.raises(NoMatch):
        pattern_match([pair(And(Eq(A, c1, i), Eq(A, c1, i)),
                            And(Eq(c1, c1, i), Eq(c2, c1, i)))])


def test_match_is_consistent_across_pairs():
    A = Meta("A", i)
    sigma = pattern_match([pair(A, c1), pair(Eq(A, A, i), Eq(c1, c1, i))])
    assert sigma[A] == c1
    with pytest.raises(NoMatch):
        pattern_match([pair(A, c1), pair(A, c2)])


def test_solved_meta_resolves_applied_occurrences():
    F = Meta("F", fn(i, i))
    value = Lam("x", i, App(f1, Var("x", i)))
    sigma = pattern_match([
        pair(Eq(F, value, fn(i, i)), Eq(value, value, fn(i, i))),
        pair(Eq(App(F, c1), c2, i), Eq(App(f1, c1), c2, i)),
    ])
    assert hol.alpha_eq(sigma[F], value)


def test_occurs_escape():
    P = Meta("P", fn(i, o))
    lhs = All("x", i, All("y", i, App(P, Var("x", i))))
    rhs = All("x", i, All("y", i, Eq(Var("x", i), Var("y", i), i)))
    with pytest.raises(OccursEscape) as exc:
        pattern_match([pair(lhs, rhs)])
    assert exc.value.meta == "P"
    assert exc.value.var == "y"
    assert isinstance(exc.value, NoMatch)


def test_not_a_pattern():
    P = Meta("P", fn(i, o))
    R = Meta("R", fn(i, i, o))
    with pytest.raises(NotAPattern):
        pattern_match([pair(App(P, c1), App(p1, c1))])
    x = Var("x", i)
    with pytest.raises(NotAPattern):
        pattern_match([pair(All("x", i, apps(R, x, x)),
                            All("x", i, Eq(x, x, i)))])
    with pytest.raises(NotAPattern):
        pattern_match([pair(All("x", i, apps(R, x, App(f1, x))),
                            All("x", i, Eq(x, x, i)))])


def test_rigid_mismatches():
    with pytest.raises(NoMatch):
        pattern_match([pair(c1, c2)])
    with pytest.raises(NoMatch):
        pattern_match([pair(Eq(c1, c1, i), And(Top(), Top()))])
    with pytest.raises(NoMatch):
        pattern_match([pair(All("x", i, Top()), All("p", fn(i, o), Top()))])
    with pytest.raises(NoMatch):
        pattern_match([pair(Not(Top()), Top())])


def test_ground_side_must_be_ground():
    A = Meta("A", i)
    with pytest.raises(ValueError):
        pattern_match([pair(A, Meta("B", i))])


def test_solution_type_guard():
    # lhs deliberately ill-typed: an IND metavariable applied to a var
    M = Meta("M", i)
    lhs = All("x", i, Eq(App(M, Var("x", i)), Var("x", i), i))
    rhs = All("x", i, Eq(App(f1, Var("x", i)), Var("x", i), i))
    with pytest.raises(NoMatch):
        pattern_match([pair(lhs, rhs)])


def test_empty_pair_list_gives_empty_substitution():
    sigma = pattern_match([])
    assert len(sigma) == 0
    assert sigma.apply(Eq(c1, c1, i)) == Eq(c1, c1, i)


# -------------------------------------------------------- substitution


def test_substitution_validates_closed():
    A = Meta("A", i)
    with pytest.raises(ValueError):
        Substitution({A: Var("x", i)})
    with pytest.raises(ValueError):
        Substitution({A: Meta("B", i)})
    with pytest.raises(IllTyped):
        Substitution({A: Top()})


def test_substitution_apply_normalizes():
    P = Meta("P", fn(i, o))
    sigma = Substitution({P: Lam("x", i, App(p1, Var("x", i)))})
    assert sigma.apply(App(P, c1)) == App(p1, c1)


def test_substitution_equality_is_alpha():
    P = Meta("P", fn(i, o))
    s1 = Substitution({P: Lam("x", i, App(p1, Var("x", i)))})
    s2 = Substitution({P: Lam("y", i, App(p1, Var("y", i)))})
    assert s1 == s2
    s3 = Substitution({P: Lam("x", i, Not(App(p1, Var("x", i))))})
    assert s1 != s3
    assert s1 != Substitution({})


def test_substitution_iteration_is_name_ordered():
    A, B = Meta("a", i), Meta("b", i)
    sigma = Substitution({B: c2, A: c1})
    assert [m.name for m, _ in sigma.items()] == ["a", "b"]
    assert A in sigma and sigma.get(Meta("z", i)) is None


# ------------------------------------------------------------ recovery


def subset_scheme():
    A = Var("A", i)
    P = Var("P", fn(i, o))
    x = Var("x", i)
    y = Var("y", i)
    return All("A", i, All("P", fn(i, o), Imp(
        All("x", i, Imp(App(P, x), member(x, A))),
        Ex("y", i, App(P, y)))))


def test_strip_outer_quantifiers():
    metas, matrix = strip_outer_quantifiers(subset_scheme(), 2)
    assert [(m.name, m.type) for m in metas] == [("A", i), ("P", fn(i, o))]
    assert hol.metas(matrix) == {metas[0], metas[1]}
    same, formula = strip_outer_quantifiers(subset_scheme(), 0)
    assert same == [] and formula == subset_scheme()


def test_strip_runs_out():
    with pytest.raises(ShapeMismatch) as exc:
        strip_outer_quantifiers(subset_scheme(), 3)
    assert "found 2" in str(exc.value)


def test_strip_shadowed_binders_get_fresh_metas():
    t = All("x", i, All("x", i, Eq(Var("x", i), Var("x", i), i)))
    metas, matrix = strip_outer_quantifiers(t, 2)
    assert [m.name for m in metas] == ["x", "x1"]
    assert matrix == Eq(metas[1], metas[1], i)


def test_recover_full_matrix():
    conjecture = Imp(
        All("x", i, Imp(App(p1, Var("x", i)), member(Var("x", i), c1))),
        Ex("y", i, App(p1, Var("y", i))))
    got = recover_scheme_instantiation(subset_scheme(), conjecture, 2)
    assert got.side_conditions == ()
    assert got.substitution == Substitution({
        Meta("A", i): c1,
        Meta("P", fn(i, o)): Lam("x", i, App(p1, Var("x", i)))})


def test_recover_peels_hypotheses():
    conjecture = Ex("y", i, App(p1, Var("y", i)))
    got = recover_scheme_instantiation(subset_scheme(), conjecture, 2)
    assert len(got.side_conditions) == 1
    side = got.side_conditions[0]
    # the peeled hypothesis keeps the unsolved area metavariable
    assert hol.metas(side) == {Meta("A", i)}
    assert hol.alpha_eq(side, All("x", i, Imp(
        App(p1, Var("x", i)), member(Var("x", i), Meta("A", i)))))
    P = Meta("P", fn(i, o))
    assert got.substitution == Substitution(
        {P: Lam("y", i, App(p1, Var("y", i)))})


def test_recover_side_conditions_are_instantiated():
    scheme = All("P", fn(i, o), Imp(App(Var("P", fn(i, o)), c2),
                                    Ex("y", i, App(Var("P", fn(i, o)),
                                                   Var("y", i)))))
    conjecture = Ex("y", i, App(p1, Var("y", i)))
    got = recover_scheme_instantiation(scheme, conjecture, 1)
    assert got.side_conditions == (App(p1, c2),)


def test_recover_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        recover_scheme_instantiation(subset_scheme(), Eq(c1, c1, i), 2)


def test_recover_requires_ground_conjecture():
    with pytest.raises(ValueError):
        recover_scheme_instantiation(subset_scheme(), Meta("G", o), 2)


# ----------------------------------------------------------- generated


def test_planted_problems_round_trip():
    rng = random.Random(4242)
    for _ in range(300):
        pattern, ground, solution = planted_problem(rng)
        assert is_pattern(pattern)
        sigma = pattern_match([pair(pattern, ground)])
        assert sigma == Substitution(solution)
        assert hol.alpha_eq(sigma.apply(pattern), ground)


def test_arbitrary_pairs_terminate():
    rng = random.Random(515151)
    outcomes = {"match": 0, "fail": 0}
    for _ in range(500):
        lhs, _, _ = planted_problem(rng)
        if rng.random() < 0.5:
            _, rhs, _ = planted_problem(rng)
        else:
            rhs = random_closed_prop(rng)
        try:
            sigma = pattern_match([pair(lhs, rhs)])
            assert hol.alpha_eq(sigma.apply(lhs), hol.beta_normalize(rhs))
            outcomes["match"] += 1
        except MatchError:
            outcomes["fail"] += 1
    assert outcomes["fail"] > 0
