import itertools

import numpy as np
import pytest

from conftest import make_config
from oracles import full_hamiltonian, total_excitation
from qudit_transfer import (
    build_bus_hamiltonian,
    build_interaction_hamiltonian,
    build_total_hamiltonian,
    build_zeeman_hamiltonian,
    enumerate_sector,
    ladder_coefficient,
)
from qudit_transfer.hamiltonian import build_xx_hamiltonian, bus_only_hamiltonian
from qudit_transfer.basis import sector_basis


def test_ladder_boundaries():
    assert ladder_coefficient(5, 0, "raise") == 0
    assert ladder_coefficient(5, 5, "lower") == 0
    assert ladder_coefficient(6, 0, "lower") == pytest.approx(np.sqrt(6))
    with pytest.raises(ValueError):
        ladder_coefficient(3, 4, "lower")
    with pytest.raises(ValueError):
        ladder_coefficient(3, 1, "sideways")


@pytest.mark.parametrize("twice_spin", [1, 2, 3, 6])
def test_ladder_matches_angular_momentum(twice_spin):
    s = twice_spin / 2
    for n in range(twice_spin + 1):
        m = s - n
        assert ladder_coefficient(twice_spin, n, "raise") == pytest.approx(np.sqrt(s * (s + 1) - m * (m + 1)))
        assert ladder_coefficient(twice_spin, n, "lower") == pytest.approx(np.sqrt(s * (s + 1) - m * (m - 1)))


def test_vacuum_blocks_vanish():
    cfg = make_config(3, 4, 2, field_h=0.0)
    basis = enumerate_sector(cfg, 0)
    for build in (build_bus_hamiltonian, build_interaction_hamiltonian, build_zeeman_hamiltonian):
        assert np.all(build(cfg, basis).toarray() == 0)


def test_bus_hop_element_spin_half():
    cfg = make_config(2, 1, 2, coupling_j=1.3)
    basis = enumerate_sector(cfg, 1)
    H = build_bus_hamiltonian(cfg, basis).toarray()
    i, j = basis.index_of((0, 1, 0, 0)), basis.index_of((0, 0, 1, 0))
    assert H[i, j] == pytest.approx(-1.3)


@pytest.mark.parametrize("n_bus", [1, 2, 3, 5, 8])
@pytest.mark.parametrize("twice_spin", [1, 4, 20])
def test_single_excitation_bus_spectrum(n_bus, twice_spin):
    cfg = make_config(n_bus, twice_spin, 2)
    basis = sector_basis(n_bus, twice_spin, 1)
    H = bus_only_hamiltonian(cfg, basis).toarray()
    k = np.arange(1, n_bus + 1)
    expected = np.sort(-2 * twice_spin * np.cos(k * np.pi / (n_bus + 1)))
    assert np.allclose(np.linalg.eigvalsh(H), expected, atol=1e-10)


def test_interaction_element_and_locality():
    cfg = make_config(1, 1, 2, coupling_g=0.37)
    basis = enumerate_sector(cfg, 1)
    H = build_interaction_hamiltonian(cfg, basis).toarray()
    s, b, r = (basis.index_of(v) for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert H[b, s] == pytest.approx(-0.37)
    assert H[r, b] == pytest.approx(-0.37)
    assert H[s, r] == 0


def test_interaction_locality_longer_chain():
    cfg = make_config(4, 2, 3, coupling_g=0.2)
    basis = enumerate_sector(cfg, 2)
    H = build_interaction_hamiltonian(cfg, basis).toarray()
    for i, j in zip(*np.nonzero(H)):
        diff = basis.states[i] - basis.states[j]
        moved = set(np.nonzero(diff)[0])
        assert moved in ({0, 1}, {4, 5})


def test_zeeman_is_scalar_per_sector():
    cfg = make_config(3, 4, 3, field_h=0.7)
    for n in range(3):
        H = build_zeeman_hamiltonian(cfg, enumerate_sector(cfg, n)).toarray()
        assert np.allclose(H, np.eye(len(H)) * (-(5 * 0.7 * 2) + 0.7 * n))


def test_total_hamiltonian_small_pattern():
    cfg = make_config(1, 1, 2, coupling_g=0.2, field_h=0.3)
    basis = enumerate_sector(cfg, 1)
    H = build_total_hamiltonian(cfg, basis).toarray()
    diag = -3 * 0.3 * 0.5 + 0.3
    expected = np.array([[diag, -0.2, 0], [-0.2, diag, -0.2], [0, -0.2, diag]])
    order = [basis.index_of(v) for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]
    assert np.allclose(H[np.ix_(order, order)], expected, atol=1e-14)


def test_bus_block_padded_when_registers_decoupled():
    cfg = make_config(3, 2, 2, coupling_g=0.0)
    basis = enumerate_sector(cfg, 1)
    H = build_total_hamiltonian(cfg, basis).toarray()
    s, r = basis.index_of((1, 0, 0, 0, 0)), basis.index_of((0, 0, 0, 0, 1))
    assert np.all(H[s] == 0) and np.all(H[r] == 0)
    bus = [basis.index_of(v) for v in [(0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0)]]
    assert np.allclose(H[np.ix_(bus, bus)], -2 * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]))


def test_large_sector_is_sparse_and_hermitian():
    cfg = make_config(3, 20, 4)
    op = build_total_hamiltonian(cfg, enumerate_sector(cfg, 3))
    assert op.dim == 35
    cfg = make_config(5, 6, 4)
    op = build_total_hamiltonian(cfg, enumerate_sector(cfg, 3))
    assert op.is_sparse and op.dim == 84
    A = op.toarray()
    assert np.abs(A - A.conj().T).max() < 1e-12


CASES = list(itertools.product([1, 2], [1, 2, 3]))


@pytest.mark.parametrize("n_bus,twice_spin", CASES)
def test_sector_blocks_match_full_space(n_bus, twice_spin):
    rng = np.random.default_rng(n_bus * 10 + twice_spin)
    J, g, h = rng.uniform(0.2, 2.0, 3)
    n_sites = n_bus + 2
    full = {
        "bus": full_hamiltonian(n_bus, twice_spin, J, g, h, ("bus",)),
        "int": full_hamiltonian(n_bus, twice_spin, J, g, h, ("int",)),
        "zeeman": full_hamiltonian(n_bus, twice_spin, J, g, h, ("zeeman",)),
    }
    builders = {
        "bus": build_bus_hamiltonian,
        "int": build_interaction_hamiltonian,
        "zeeman": build_zeeman_hamiltonian,
    }
    cfg = make_config(n_bus, twice_spin, 2, coupling_j=J, coupling_g=g, field_h=h,
                      excitation_cap=n_sites * twice_spin)
    for n in range(n_sites * twice_spin + 1):
        basis = enumerate_sector(cfg, n)
        idx = basis.codes
        for name, build in builders.items():
            block = build(cfg, basis).toarray()
            assert np.abs(block - full[name][np.ix_(idx, idx)]).max() < 1e-12


@pytest.mark.parametrize("n_bus,twice_spin", CASES)
def test_xx_commutes_with_zeeman_and_number(n_bus, twice_spin):
    H_xx = full_hamiltonian(n_bus, twice_spin, 1.0, 0.3, 0.0, ("bus", "int"))
    H_m = full_hamiltonian(n_bus, twice_spin, 1.0, 0.3, 0.8, ("zeeman",))
    Ntot = np.diag(total_excitation(n_bus + 2, twice_spin)).astype(float)
    assert np.abs(H_xx @ H_m - H_m @ H_xx).max() < 1e-12
    assert np.abs(H_xx @ Ntot - Ntot @ H_xx).max() < 1e-12
    # no full-space element connects different excitation numbers
    tot = total_excitation(n_bus + 2, twice_spin)
    rows, cols = np.nonzero(H_xx)
    assert np.all(tot[rows] == tot[cols])


def test_linearized_generator_exact_in_one_excitation_sector():
    cfg = make_config(5, 7, 2, coupling_j=1.0, coupling_g=0.3)
    H = build_xx_hamiltonian(cfg, enumerate_sector(cfg, 1)).toarray()
    # free-boson hopping: -2S J on bus bonds, -2S g on register bonds
    L = cfg.n_sites
    lin = np.zeros((L, L))
    for i in range(L - 1):
        c = cfg.coupling_g if i in (0, L - 2) else cfg.coupling_j
        lin[i, i + 1] = lin[i + 1, i] = -cfg.twice_spin * c
    basis = enumerate_sector(cfg, 1)
    order = [basis.index_of(tuple(int(k == i) for k in range(L))) for i in range(L)]
    assert np.allclose(H[np.ix_(order, order)], lin, atol=1e-12)


def test_basis_mismatch_rejected():
    cfg = make_config(3, 2, 2)
    with pytest.raises(ValueError):
        build_total_hamiltonian(cfg, sector_basis(4, 2, 1))
