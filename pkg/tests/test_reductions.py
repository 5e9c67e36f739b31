import pytest

from dbu import (
    Qbf,
    Quantifier,
    equivalence_closure,
    equivalence_harness,
    exhaustive_qbf_suite,
    extract_parameters,
    format_qbf,
    frame_report,
    modal_depth,
    parse_formula,
    parse_qbf,
    qbf_brute_force,
    random_qbf_suite,
    reduce_tqbf_to_dbu,
)
from dbu.formula import Prop
from dbu.reductions import QbfSyntaxError, initial_state

EX_FORALL = "E x1 A x2 . (x1 | x2)"


def test_parse_single_existential():
    q = parse_qbf("E x1 . x1")
    assert q.prefix == ((Quantifier.EXISTS, 1),)
    assert q.matrix == Prop("x1")


def test_parse_single_universal():
    q = parse_qbf("A x1 . x1")
    assert q.prefix == ((Quantifier.FORALL, 1),)


def test_parse_running_example():
    q = parse_qbf(EX_FORALL)
    assert q.prefix == ((Quantifier.EXISTS, 1), (Quantifier.FORALL, 2))
    assert q.matrix == parse_formula("x1 | x2", {"a"}, {"x1", "x2"})


def test_parse_rejects_bad_syntax():
    with pytest.raises(QbfSyntaxError):
        parse_qbf("E x1 x1")  # missing dot
    with pytest.raises(QbfSyntaxError):
        parse_qbf(". x1")
    with pytest.raises(QbfSyntaxError):
        parse_qbf("E x1 . (x1")


def test_parse_rejects_bad_variables():
    with pytest.raises(QbfSyntaxError):
        parse_qbf("E x1 . x2")  # unbound in matrix
    with pytest.raises(QbfSyntaxError):
        parse_qbf("E x1 E x1 . x1")  # duplicate
    with pytest.raises(QbfSyntaxError):
        parse_qbf("E x2 . x2")  # gap: x1 missing
    with pytest.raises(QbfSyntaxError):
        parse_qbf("E x2 E x1 . x1")  # out of order


def test_format_round_trips():
    for text in ("E x1 . x1", EX_FORALL, "A x1 E x2 A x3 . (x1 & ~x2) | x3"):
        q = parse_qbf(text)
        assert parse_qbf(format_qbf(q)) == q


def test_brute_force_base_cases():
    assert qbf_brute_force(parse_qbf("E x1 . x1")) is True
    assert qbf_brute_force(parse_qbf("A x1 . x1")) is False


def test_brute_force_running_example():
    assert qbf_brute_force(parse_qbf(EX_FORALL)) is True
    assert qbf_brute_force(parse_qbf("A x1 A x2 . (x1 | x2)")) is False


def test_brute_force_guard():
    prefix = tuple((Quantifier.EXISTS, i) for i in range(1, 22))
    q = Qbf(prefix, Prop("x1"))
    with pytest.raises(ValueError):
        qbf_brute_force(q)


def test_equivalence_closure_reflexive_loops_only():
    closure = equivalence_closure(["a", "b"], [])
    assert closure == {("a", "a"), ("b", "b")}


def test_equivalence_closure_chain_becomes_clique():
    worlds = ["a", "b", "c"]
    closure = equivalence_closure(worlds, [("a", "b"), ("b", "c")])
    assert closure == {(w, v) for w in worlds for v in worlds}


def test_equivalence_closure_keeps_components_apart():
    closure = equivalence_closure(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
    assert ("a", "c") not in closure
    assert ("b", "a") in closure and ("d", "c") in closure


def test_reduction_structure_single_variable():
    inst = reduce_tqbf_to_dbu(parse_qbf("E x1 . x1"))
    assert inst.agents == {"a", "1"}
    assert inst.props == {"y"}
    assert len(inst.initial.model.worlds) == 3
    assert len(inst.actions) == 1
    assert inst.query == parse_formula("D[1] D[a] D[1] y", inst.agents, inst.props)


def test_reduction_query_matches_worked_example():
    inst = reduce_tqbf_to_dbu(parse_qbf(EX_FORALL))
    expected = parse_formula("D[1] B[2] (D[a] D[1] y | D[a] D[2] y)", inst.agents, inst.props)
    assert inst.query == expected


def test_reduction_structure_invariants():
    for m in (1, 2, 3, 4):
        prefix = " ".join(f"E x{i}" for i in range(1, m + 1))
        inst = reduce_tqbf_to_dbu(parse_qbf(f"{prefix} . x1"))
        assert len(inst.initial.model.worlds) == 2 * m + 1
        assert all(len(a.model.events) == 2 for a in inst.actions)
        assert frame_report(inst.initial.model).classification == "S5"
        for action in inst.actions:
            assert frame_report(action.model).classification == "S5"
        params = extract_parameters(inst)
        assert (params.a, params.p, params.u, params.e) == (m + 1, 1, m, 2)
        assert params.c == 10
        assert modal_depth(inst.query) >= m


def test_generated_bottom_worlds_form_one_cluster():
    s0 = initial_state(3)
    bottoms = {f"w{j}" for j in range(4)}
    relation = s0.model.relations["a"]
    assert {(w, v) for w in bottoms for v in bottoms} <= relation
    satellites = {f"v{i}" for i in range(1, 4)}
    for w, v in relation:
        assert (w in satellites) == (v in satellites) or w == v


def test_harness_single_instance():
    report = equivalence_harness([parse_qbf("E x1 . x1")])
    assert len(report.records) == 1
    assert report.disagreements == 0
    assert report.records[0].agree


def test_harness_worked_examples():
    report = equivalence_harness([parse_qbf(EX_FORALL), parse_qbf("A x1 A x2 . (x1 | x2)")])
    assert report.disagreements == 0
    assert [record.dbu for record in report.records] == [True, False]
    assert report.summary() == "2 instances, 0 disagreements"


def test_harness_small_exhaustive_suite_agrees():
    suite = exhaustive_qbf_suite(2)
    report = equivalence_harness(suite)
    assert report.disagreements == 0
    assert all(record.bound_ok() for record in report.records)


def test_exhaustive_suite_is_deterministic_and_deduplicated():
    one = exhaustive_qbf_suite(2)
    two = exhaustive_qbf_suite(2)
    assert one == two
    assert len(one) == len({(q.prefix, q.matrix) for q in one})


def test_exhaustive_suite_size_m1():
    # 3 clauses of width <= 2 over {x1, ~x1}; matrices of 1..3 distinct
    # clauses; 2 quantifier patterns
    assert len(exhaustive_qbf_suite(1)) == 2 * (3 + 3 + 1)


def test_random_suite_seeded_and_in_bounds():
    one = random_qbf_suite(30, max_m=5, seed=7)
    two = random_qbf_suite(30, max_m=5, seed=7)
    other = random_qbf_suite(30, max_m=5, seed=8)
    assert one == two
    assert one != other
    assert all(1 <= q.num_vars <= 5 for q in one)


def test_qbf_invariant_validation():
    with pytest.raises(ValueError):
        Qbf((), Prop("x1"))
    with pytest.raises(ValueError):
        Qbf(((Quantifier.EXISTS, 2),), Prop("x2"))
    with pytest.raises(ValueError):
        Qbf(((Quantifier.EXISTS, 1),), Prop("x9"))
