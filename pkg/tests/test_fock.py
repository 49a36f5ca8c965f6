"""Unit tests for the two-photon Fock space layer."""

import math

import pytest

from pbsgraph.fock import (
    FockState,
    ModeLabel,
    fidelity,
    make_bell_pair,
    qubit_statevector_from_stabilizers,
    tensor,
)
from pbsgraph.pauli import StabilizerGroup


def _two_port_state(amplitudes) -> FockState:
    modes = (ModeLabel(0, "H"), ModeLabel(0, "V"), ModeLabel(1, "H"), ModeLabel(1, "V"))
    return FockState(modes, dict(amplitudes))


def test_bell_pair_amplitudes():
    bell = make_bell_pair(0, 1)
    amps = bell.amplitudes
    assert set(amps) == {(1, 0, 1, 0), (0, 1, 0, 1)}
    for a in amps.values():
        assert a == pytest.approx(1 / math.sqrt(2))
    assert bell.norm_squared() == pytest.approx(1.0)


def test_pbs_transmits_h_and_swaps_v():
    h_in_a = _two_port_state({(1, 0, 0, 0): 1.0})
    assert h_in_a.apply_pbs(0, 1).amplitudes == {(1, 0, 0, 0): 1.0}
    v_in_a = _two_port_state({(0, 1, 0, 0): 1.0})
    assert v_in_a.apply_pbs(0, 1).amplitudes == {(0, 0, 0, 1): 1.0}
    # one V on each side swaps into itself
    both_v = _two_port_state({(0, 1, 0, 1): 1.0})
    assert both_v.apply_pbs(0, 1).amplitudes == {(0, 1, 0, 1): 1.0}
    # two V photons in one port travel together
    crossed = _two_port_state({(0, 2, 0, 0): 1.0})
    assert crossed.apply_pbs(0, 1).amplitudes == {(0, 0, 0, 2): 1.0}


def test_hwp_on_single_photon():
    h_only = _two_port_state({(1, 0, 0, 0): 1.0})
    out = h_only.apply_hwp_hadamard(0).amplitudes
    assert out[(1, 0, 0, 0)] == pytest.approx(1 / math.sqrt(2))
    assert out[(0, 1, 0, 0)] == pytest.approx(1 / math.sqrt(2))
    v_only = _two_port_state({(0, 1, 0, 0): 1.0})
    out = v_only.apply_hwp_hadamard(0).amplitudes
    assert out[(1, 0, 0, 0)] == pytest.approx(1 / math.sqrt(2))
    assert out[(0, 1, 0, 0)] == pytest.approx(-1 / math.sqrt(2))


def test_hwp_two_photon_interference():
    """|1,1> in one port turns into (|2,0> - |0,2>)/sqrt(2): the bosonic
    coincidence term cancels."""
    both = _two_port_state({(1, 1, 0, 0): 1.0})
    out = both.apply_hwp_hadamard(0).amplitudes
    assert set(out) == {(2, 0, 0, 0), (0, 2, 0, 0)}
    assert out[(2, 0, 0, 0)] == pytest.approx(1 / math.sqrt(2))
    assert out[(0, 2, 0, 0)] == pytest.approx(-1 / math.sqrt(2))
    assert both.apply_hwp_hadamard(0).apply_hwp_hadamard(0).amplitudes[(1, 1, 0, 0)] == pytest.approx(1.0)


def test_hwp_occupancy_overflow_raises():
    dense = _two_port_state({(2, 1, 0, 0): 1.0})
    with pytest.raises(ValueError):
        dense.apply_hwp_hadamard(0)


def test_state_validation():
    modes = (ModeLabel(0, "H"), ModeLabel(0, "V"))
    with pytest.raises(ValueError):
        FockState((modes[1], modes[0]), {})
    with pytest.raises(ValueError):
        FockState(modes, {(1,): 1.0})
    with pytest.raises(ValueError):
        FockState(modes, {(3, 0): 1.0})


def test_postselect_single_photon():
    bell = make_bell_pair(0, 1)
    prob, kept = bell.postselect_single_photon([0, 1])
    assert prob == pytest.approx(1.0)
    assert fidelity(kept, bell) == pytest.approx(1.0)

    bunched = _two_port_state({(2, 0, 0, 0): 1.0})
    prob, kept = bunched.postselect_single_photon([0])
    assert prob == 0.0 and kept is None


def test_pbs_postselect_on_bell_pairs_gives_half():
    pairs = tensor(make_bell_pair(0, 1), make_bell_pair(2, 3))
    after = pairs.apply_pbs(1, 2)
    prob, kept = after.postselect_single_photon([1, 2])
    assert prob == pytest.approx(0.5, abs=1e-12)
    assert kept.norm_squared() == pytest.approx(1.0)


def test_tensor_requires_disjoint_ports():
    with pytest.raises(ValueError):
        tensor(make_bell_pair(0, 1), make_bell_pair(1, 2))


def test_fidelity_edge_cases():
    bell = make_bell_pair(0, 1)
    hh = _two_port_state({(1, 0, 1, 0): 1.0})
    vv = _two_port_state({(0, 1, 0, 1): 1.0})
    assert fidelity(hh, vv) == pytest.approx(0.0)
    assert fidelity(bell, hh) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        fidelity(bell, make_bell_pair(0, 2))


def test_statevector_matches_bell_pair():
    """A stabilizer group converts to the same physical state the photonic
    source prepares, up to global phase."""
    group = StabilizerGroup.from_labels(["XX", "ZZ"])
    rebuilt = qubit_statevector_from_stabilizers(group, [0, 1])
    assert fidelity(rebuilt, make_bell_pair(0, 1)) == pytest.approx(1.0)


def test_statevector_matches_edge_graph_state():
    group = StabilizerGroup.from_labels(["XZ", "ZX"])
    rebuilt = qubit_statevector_from_stabilizers(group, [0, 1])
    source = make_bell_pair(0, 1).apply_hwp_hadamard(1)
    assert fidelity(rebuilt, source) == pytest.approx(1.0)
