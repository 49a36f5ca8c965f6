"""Unit tests for schedules, the join planner, and the brute-force oracle."""

import random

import networkx as nx
import pytest

from pbsgraph.fock import fidelity, qubit_statevector_from_stabilizers
from pbsgraph.graphs import Graph, graph_to_stabilizers
from pbsgraph.planner import (
    CreatePair,
    Hadamard,
    Measure,
    PbsGate,
    Schedule,
    brute_force_schedule_search,
    execute_schedule,
    execute_schedule_fock,
    measures_early,
    parse_schedule,
    plan_join_sequence,
    plan_tree_protocol,
    schedule_from_json_dict,
    schedule_json_dict,
    schedule_text,
    validate_schedule,
)

STAR4 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
PATH4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
# triangle with a pendant vertex on each corner: the smallest loop target
# our gate set can actually reach
NET6 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])


def _trees(n: int):
    for g in nx.nonisomorphic_trees(n):
        relabel = {v: i for i, v in enumerate(sorted(g.nodes))}
        yield Graph.from_edges(n, [(relabel[u], relabel[v]) for u, v in g.edges])


def test_protocol_single_level_instruction_stream():
    sched = plan_tree_protocol(1)
    assert sched.instructions == (
        CreatePair(1, 2),
        CreatePair(3, 4),
        Measure(1),
        Measure(4),
        PbsGate(2, 3),
        Measure(2),
        Measure(3),
    )
    assert sched.levels == 1


def test_protocol_schedules_are_wellformed_and_eager():
    for m in range(1, 5):
        sched = plan_tree_protocol(m)
        validate_schedule(sched)
        assert measures_early(sched)
        assert sched.pair_count() == 1 << m
        assert sched.gate_count() == (1 << m) - 1
        assert len(sched.qubit_ids()) == 1 << (m + 1)
        # every qubit leaves the register exactly once
        measured = [ins.q for ins in sched.instructions if isinstance(ins, Measure)]
        assert sorted(measured) == list(sched.qubit_ids())


def test_protocol_execution_matches_declared_target():
    for m in range(1, 4):
        sched = plan_tree_protocol(m)
        prob, group, graph = execute_schedule(sched)
        assert prob == pytest.approx(0.5 ** sched.gate_count())
        assert graph == sched.target
        assert sched.target.is_tree()
        assert sched.target.num_vertices == 1 << (m + 1)


def test_measures_early_detects_lazy_measurement():
    lazy = Schedule((
        CreatePair(0, 1),
        CreatePair(2, 3),
        PbsGate(1, 2),
        Measure(0),  # waited through the gate for no reason
        Measure(1),
        Measure(2),
        Measure(3),
    ))
    validate_schedule(lazy)
    assert not measures_early(lazy)


def test_join_planner_star_and_paths():
    star = plan_join_sequence(STAR4)
    assert star is not None
    assert star.pair_count() == 2 and star.gate_count() == 1
    prob, _, graph = execute_schedule(star)
    assert prob == 0.5 and graph == STAR4

    assert plan_join_sequence(PATH4) is None
    path6 = Graph.from_edges(6, [(i, i + 1) for i in range(5)])
    assert plan_join_sequence(path6) is None


def test_join_planner_edge_cases():
    edge = Graph.from_edges(2, [(0, 1)])
    sched = plan_join_sequence(edge)
    assert sched is not None and sched.gate_count() == 0
    prob, _, graph = execute_schedule(sched)
    assert prob == 1.0 and graph == edge

    odd = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert plan_join_sequence(odd) is None
    with pytest.raises(ValueError):
        plan_join_sequence(C4)
    with pytest.raises(ValueError):
        plan_join_sequence(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_join_planner_handles_large_stars():
    for n in (4, 6, 8, 10, 12):
        star = Graph.from_edges(n, [(0, v) for v in range(1, n)])
        sched = plan_join_sequence(star)
        assert sched is not None
        assert sched.gate_count() == n // 2 - 1
        prob, _, graph = execute_schedule(sched)
        assert prob == pytest.approx(0.5 ** sched.gate_count())
        assert graph == star


def test_join_planner_agrees_with_forest_oracle_on_six_vertices():
    for tree in _trees(6):
        planned = plan_join_sequence(tree)
        brute = brute_force_schedule_search(tree)
        assert (planned is None) == (brute is None), tree.sorted_edges()
        if planned is not None:
            assert execute_schedule(planned)[2] == tree
            assert execute_schedule(brute)[2] == tree
            assert brute.gate_count() == 2  # minimum for three pairs


def test_brute_force_star_is_minimal():
    sched = brute_force_schedule_search(STAR4)
    assert sched is not None
    assert sched.gate_count() == 1
    prob, _, graph = execute_schedule(sched)
    assert prob == 0.5 and graph == STAR4


def test_brute_force_rejects_bad_inputs():
    # odd order is simply unbuildable, not a usage error
    assert brute_force_schedule_search(Graph.from_edges(3, [(0, 1), (1, 2)])) is None
    big = Graph.from_edges(10, [(0, v) for v in range(1, 10)])
    with pytest.raises(ValueError):
        brute_force_schedule_search(big)
    with pytest.raises(ValueError):
        brute_force_schedule_search(Graph(0))


def test_loop_demo_net_graph():
    """The triangle-with-pendants graph needs one same-cluster gate: the
    forest search fails, the stabilizer search finds a three-gate plan
    whose tableau and photon-level executions both hit the target."""
    assert brute_force_schedule_search(NET6) is None
    sched = brute_force_schedule_search(NET6, allow_intra=True)
    assert sched is not None
    assert sched.gate_count() == 3
    prob, group, graph = execute_schedule(sched)
    assert prob == pytest.approx(0.125)
    assert graph == NET6

    fock_prob, fock_state = execute_schedule_fock(sched)
    assert fock_prob == pytest.approx(prob, abs=1e-9)
    reference = qubit_statevector_from_stabilizers(group, sched.qubit_ids())
    assert fidelity(fock_state, reference) == pytest.approx(1.0, abs=1e-9)


def test_four_cycle_stays_unreachable_even_with_intra_and_hadamards():
    assert brute_force_schedule_search(C4, allow_intra=True, allow_hadamard=True, max_gates=4) is None


def test_execute_schedule_foundations():
    prob, group, graph = execute_schedule(Schedule(()))
    assert prob == 1.0 and group.num_qubits == 0 and graph == Graph(0)

    pair = Schedule((CreatePair(5, 9),))
    prob, group, graph = execute_schedule(pair)
    assert prob == 1.0
    assert graph == Graph.from_edges(2, [(0, 1)])
    assert group.equals_group(graph_to_stabilizers(graph))


def test_execute_schedule_impossible_gate(monkeypatch):
    """A forced-impossible fusion zeroes the probability and reports no
    graph; the pre-gate group is still returned for inspection."""
    import pbsgraph.planner as planner_module

    monkeypatch.setattr(planner_module, "apply_pbs_gate", lambda group, i1, i2: (0.0, None))
    sched = Schedule((CreatePair(0, 1), CreatePair(2, 3), PbsGate(1, 2)))
    prob, group, graph = execute_schedule(sched)
    assert prob == 0.0 and graph is None
    assert group.num_qubits == 4


def test_fock_execution_handles_hadamard_instructions():
    sched = Schedule((CreatePair(0, 1), Hadamard(1)))
    prob, state = execute_schedule_fock(sched)
    assert prob == 1.0
    _, group, _ = execute_schedule(sched)
    reference = qubit_statevector_from_stabilizers(group, (0, 1))
    assert fidelity(state, reference) == pytest.approx(1.0, abs=1e-12)


def test_random_small_schedules_round_trip_formats():
    rng = random.Random(2024)
    for _ in range(40):
        instructions = []
        live = []
        for pair_index in range(rng.randrange(1, 4)):
            a, b = 2 * pair_index, 2 * pair_index + 1
            instructions.append(CreatePair(a, b))
            live.extend((a, b))
        for _ in range(rng.randrange(0, 3)):
            if rng.random() < 0.3:
                instructions.append(Hadamard(rng.choice(live)))
            elif len(live) >= 2:
                i1, i2 = rng.sample(live, 2)
                instructions.append(PbsGate(i1, i2))
        for q in live:
            if rng.random() < 0.5:
                instructions.append(Measure(q))
        sched = Schedule(tuple(instructions))
        validate_schedule(sched)
        assert parse_schedule(schedule_text(sched)).instructions == sched.instructions
        assert schedule_from_json_dict(schedule_json_dict(sched)).instructions == sched.instructions


def test_parse_schedule_accepts_comments_and_rejects_garbage():
    text = "# build one edge\npair 0 1\n\nH 1  # flip the second qubit\nMEASURE 0\n"
    sched = parse_schedule(text)
    assert sched.instructions == (CreatePair(0, 1), Hadamard(1), Measure(0))
    with pytest.raises(ValueError, match="line 1"):
        parse_schedule("PBS one two\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_schedule("PAIR 0 1\nTELEPORT 0 1\n")
    with pytest.raises(ValueError):
        parse_schedule("PBS 0 1\n")  # gate before creation
    with pytest.raises(ValueError):
        schedule_from_json_dict({"instructions": [{"op": "WARP", "qubits": [0]}]})


def test_validate_schedule_rejects_malformed_programs():
    with pytest.raises(ValueError):
        validate_schedule(Schedule((CreatePair(0, 0),)))
    with pytest.raises(ValueError):
        validate_schedule(Schedule((CreatePair(0, 1), CreatePair(1, 2))))
    with pytest.raises(ValueError):
        validate_schedule(Schedule((CreatePair(0, 1), PbsGate(0, 0))))
    with pytest.raises(ValueError):
        validate_schedule(Schedule((CreatePair(0, 1), Measure(0), Hadamard(0))))
    with pytest.raises(ValueError):
        validate_schedule(Schedule((CreatePair(-1, 1),)))
    with pytest.raises(ValueError):
        validate_schedule(Schedule((CreatePair(0, 1), PbsGate(0, 2))))