import numpy as np
import pytest

from catlab import (SymplecticMatrix, egorov_defect, metaplectic_adjoint,
                    metaplectic_sl2, period_phase, rotation_propagator,
                    tensor_propagator)
from catlab.hilbert import StateSpace
from catlab.metaplectic import rotation_classical

CAT = SymplecticMatrix([[2, 1], [1, 1]])
SP34 = StateSpace(1, 34)


def test_propagator_unitary():
    M = metaplectic_sl2(SP34, CAT).dense
    assert np.abs(M.conj().T @ M - np.eye(34)).max() < 1e-12


def test_adjoint_inverts():
    M = metaplectic_sl2(SP34, CAT)
    Mh = metaplectic_adjoint(SP34, CAT)
    assert Mh.classical.entries == CAT.inverse().entries
    assert np.abs(Mh.dense @ M.dense - np.eye(34)).max() < 1e-12


def test_composition_matches_square_up_to_phase():
    M = metaplectic_sl2(SP34, CAT)
    M2 = M.compose(M).dense
    Msq = metaplectic_sl2(SP34, CAT @ CAT).dense
    phase = M2[0, 0] / Msq[0, 0]
    assert abs(abs(phase) - 1.0) < 1e-12
    assert np.abs(M2 - phase * Msq).max() < 1e-11


def test_entry_formula_rejections():
    with pytest.raises(ValueError):
        metaplectic_sl2(StateSpace(1, 33), CAT)  # odd N
    with pytest.raises(ValueError):
        metaplectic_sl2(SP34, [[1, 1], [0, 1]])  # non-positive entry
    with pytest.raises(ValueError):
        metaplectic_sl2(StateSpace(2, 34), CAT)  # n = 1 only


def test_egorov_intertwining_sl2():
    M = metaplectic_sl2(SP34, CAT)
    assert egorov_defect(M, 2) < 1e-12


def test_rotation_propagator_order_four_and_egorov():
    sp = StateSpace(2, 10)
    R = rotation_propagator(sp)
    D = R.dense
    assert np.abs(D.conj().T @ D - np.eye(100)).max() < 1e-14
    assert np.abs(np.linalg.matrix_power(D, 4) - np.eye(100)).max() < 1e-14
    assert rotation_classical().power(4).entries == tuple(
        tuple(int(i == j) for j in range(4)) for i in range(4))
    assert egorov_defect(R, 1) < 1e-13


def test_tensor_propagator_matches_kron_and_egorov():
    sp1 = StateSpace(1, 10)
    sp2 = StateSpace(2, 10)
    M = metaplectic_sl2(sp1, CAT)
    T = tensor_propagator(sp2, M, M)
    assert np.abs(T.dense - np.kron(M.dense, M.dense)).max() < 1e-13
    assert egorov_defect(T, 1) < 1e-12


def test_block_rotation_conjugate_is_metaplectic_of_conjugate():
    # R (M (x) M) R^{-1} intertwines with the rotated classical matrix
    sp1 = StateSpace(1, 10)
    sp2 = StateSpace(2, 10)
    M = metaplectic_sl2(sp1, CAT)
    T = tensor_propagator(sp2, M, M)
    R = rotation_propagator(sp2)
    conj = R.compose(T).compose(
        rotation_propagator(sp2).compose(R).compose(R))  # R T R^3 = R T R^-1
    expect = (rotation_classical() @ T.classical
              @ rotation_classical().inverse())
    assert conj.classical.entries == (
        rotation_classical() @ T.classical
        @ rotation_classical().power(3)).entries
    assert expect.entries == conj.classical.entries
    assert egorov_defect(conj, 1) < 1e-12


def test_period_phase_dense(prop144):
    pp = period_phase(prop144, 12)
    assert pp.P == 12
    assert abs(pp.phi) < 1e-8
    assert pp.defect < 1e-10


def test_period_phase_wrong_period_raises(prop144):
    with pytest.raises(AssertionError):
        period_phase(prop144, 5)


def test_period_phase_streamed_matches_dense():
    # force the streamed path with a tiny materialization limit
    import catlab.metaplectic as mp
    sp = StateSpace(1, 144)
    M = metaplectic_sl2(sp, CAT)
    dense_pp = period_phase(M, 12)
    old = mp.DENSE_LIMIT
    mp.DENSE_LIMIT = 8
    try:
        rng = np.random.default_rng(7)
        probes = [rng.normal(size=144) + 1j * rng.normal(size=144)]
        streamed_pp = period_phase(M, 12, probes=probes)
    finally:
        mp.DENSE_LIMIT = old
    assert abs(streamed_pp.phi - dense_pp.phi) < 1e-9
    assert streamed_pp.defect < 1e-9
