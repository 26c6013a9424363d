"""Closed-form eigenbranches against dense numerics, block angles, edge
handling, and the labeled eigensolver."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from berrysim.errors import (
    EdgeBranchError,
    InvalidInputError,
    LabelingError,
)
from berrysim.models import (
    HybridModel,
    OscillatorModel,
    build_hybrid,
    build_oscillator,
)
from berrysim.spectra import (
    all_branches,
    branch_alpha,
    hybrid_block_angle,
    hybrid_eigensystem,
    numeric_eigensystem,
    oscillator_eigensystem,
)


def _random_hybrid(rng):
    j = rng.choice([0.5, 1.0, 1.5, 2.0])
    return HybridModel(
        B=rng.uniform(0.2, 2.0), theta=rng.uniform(0.05, math.pi - 0.05),
        omega=rng.uniform(0.05, 1.0), mu=rng.uniform(0.0, 2.0), j=float(j))


def _random_oscillator(rng, n_max=18):
    return OscillatorModel(
        nu=rng.uniform(0.5, 2.0), g=rng.uniform(0.0, 1.5),
        beta_mag=rng.uniform(0.0, 0.8), omega=rng.uniform(0.05, 1.0),
        n_max=n_max)


class TestHybridBranches:
    def test_eigen_residual_random(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            model = _random_hybrid(rng)
            hset = build_hybrid(model)
            h = hset.h0_at(0.0)
            scale = np.linalg.norm(h, 2)
            for br in all_branches(hset):
                res = np.linalg.norm(h @ br.ket_at(0.0)
                                     - br.energy * br.ket_at(0.0))
                assert res <= 1e-9 * max(scale, 1.0)

    def test_branch_count_and_completeness(self):
        rng = np.random.default_rng(1)
        for _ in range(5):
            model = _random_hybrid(rng)
            hset = build_hybrid(model)
            branches = all_branches(hset)
            assert len(branches) == hset.dim
            proj = sum(np.outer(b.static_ket, b.static_ket.conj())
                       for b in branches)
            assert_allclose(proj, np.eye(hset.dim), atol=1e-12)

    def test_transported_ket_stays_eigenvector(self):
        model = HybridModel(B=1.2, theta=0.8, omega=0.4, mu=0.9, j=1.0)
        hset = build_hybrid(model)
        br = hybrid_eigensystem(model, 0.0, "+", hset=hset)
        for t in (0.3, 0.5 * hset.period, 1.7 * hset.period):
            k = br.ket_at(t)
            res = np.linalg.norm(hset.h0_at(t) @ k - br.energy * k)
            assert res <= 1e-9

    def test_interior_energies(self):
        model = HybridModel(B=1.0, theta=0.6, omega=0.3, mu=0.8, j=1.5)
        for m in (-1.5, -0.5, 0.5):
            w = math.sqrt(model.j * (model.j + 1) - m * (m + 1))
            d = model.B + model.mu * (m + 0.5)
            gap = math.hypot(d, model.mu * w)
            ep = hybrid_eigensystem(model, m, "+").energy
            em = hybrid_eigensystem(model, m, "-").energy
            assert ep == pytest.approx(model.mu / 2 - gap, abs=1e-12)
            assert em == pytest.approx(model.mu / 2 + gap, abs=1e-12)

    def test_edge_energies_and_alpha(self):
        model = HybridModel(B=1.0, theta=0.6, omega=0.3, mu=0.8, j=1.0)
        top = hybrid_eigensystem(model, 1.0, "+")
        bottom = hybrid_eigensystem(model, -2.0, "-")
        assert top.energy == pytest.approx(-(model.B + model.mu * model.j))
        assert bottom.energy == pytest.approx(model.B - model.mu * model.j)
        assert top.alpha == 0.0 and bottom.alpha == 0.0

    def test_edge_branch_errors(self):
        model = HybridModel(B=1.0, theta=0.6, omega=0.3, mu=0.8, j=1.0)
        with pytest.raises(EdgeBranchError):
            hybrid_eigensystem(model, 1.0, "-")
        with pytest.raises(EdgeBranchError):
            hybrid_eigensystem(model, -2.0, "+")
        with pytest.raises(InvalidInputError):
            hybrid_eigensystem(model, 2.0, "+")
        with pytest.raises(InvalidInputError):
            hybrid_eigensystem(model, 0.3, "+")
        with pytest.raises(InvalidInputError):
            hybrid_eigensystem(model, 0.0, "x")

    def test_block_angle_range_and_limits(self):
        model = HybridModel(B=1.0, theta=0.6, omega=0.3, mu=0.8, j=1.5)
        for m in (-1.5, -0.5, 0.5):
            assert 0.0 <= hybrid_block_angle(model, m) <= math.pi
        # no coupling: the block angle closes
        bare = HybridModel(B=1.0, theta=0.6, omega=0.3, mu=0.0, j=1.5)
        assert hybrid_block_angle(bare, 0.5) == 0.0

    def test_block_angle_beyond_right_angle(self):
        # negative detuning pushes the mixing angle past pi/2
        model = HybridModel(B=0.1, theta=0.6, omega=0.3, mu=2.0, j=1.5)
        alpha = hybrid_block_angle(model, -1.5)
        assert alpha > math.pi / 2


class TestOscillatorBranches:
    def test_eigen_residual_random(self):
        # displaced kets fray exponentially toward the Fock edge, so keep
        # a wide margin between the probed levels and n_max
        rng = np.random.default_rng(9)
        for _ in range(10):
            model = _random_oscillator(rng, n_max=40)
            hset = build_oscillator(model)
            h = hset.h0_at(0.0)
            scale = np.linalg.norm(h, 2)
            for n in range(-1, 8):
                for branch in ("+", "-"):
                    if n == -1 and branch == "+":
                        continue
                    br = oscillator_eigensystem(model, n, branch, hset=hset)
                    k = br.ket_at(0.0)
                    res = np.linalg.norm(h @ k - br.energy * k)
                    assert res <= 1e-9 * max(scale, 1.0)

    def test_mixing_angle_formula_and_monotonicity(self):
        model = OscillatorModel(nu=1.0, g=1.0, beta_mag=0.5, omega=0.1,
                                n_max=30)
        alphas = [branch_alpha(model, n, "+") for n in range(8)]
        for n, alpha in enumerate(alphas):
            assert alpha == pytest.approx(
                math.atan2(2.0 * model.g * math.sqrt(n + 1), model.nu))
        assert all(a < b for a, b in zip(alphas, alphas[1:]))

    def test_canonical_mixing_angle(self):
        # nu = g = 1, n = 0: tan(alpha) = 2, not 1
        model = OscillatorModel(nu=1.0, g=1.0, beta_mag=0.5, omega=0.1,
                                n_max=20)
        assert branch_alpha(model, 0, "-") == pytest.approx(
            math.atan(2.0), abs=1e-15)

    def test_interior_energies(self):
        model = OscillatorModel(nu=1.3, g=0.7, beta_mag=0.4, omega=0.1,
                                n_max=20)
        for n in range(4):
            gap = math.sqrt(model.nu**2 / 4 + model.g**2 * (n + 1))
            ep = oscillator_eigensystem(model, n, "+").energy
            em = oscillator_eigensystem(model, n, "-").energy
            assert ep == pytest.approx(model.nu * (n + 0.5) - gap, abs=1e-12)
            assert em == pytest.approx(model.nu * (n + 0.5) + gap, abs=1e-12)

    def test_ground_edge(self):
        model = OscillatorModel(nu=1.3, g=0.7, beta_mag=0.4, omega=0.1,
                                n_max=20)
        edge = oscillator_eigensystem(model, -1, "-")
        assert edge.energy == 0.0
        k = edge.static_ket
        assert k[1] == 1.0 and np.linalg.norm(k) == 1.0

    def test_edge_and_range_errors(self):
        model = OscillatorModel(nu=1.0, g=1.0, beta_mag=0.5, omega=0.1,
                                n_max=20)
        with pytest.raises(EdgeBranchError):
            oscillator_eigensystem(model, -1, "+")
        with pytest.raises(InvalidInputError):
            oscillator_eigensystem(model, 20, "+")
        with pytest.raises(InvalidInputError):
            oscillator_eigensystem(model, -2, "-")


class TestNumericEigensystem:
    def test_matches_closed_blocks(self):
        model = HybridModel(B=1.1, theta=0.7, omega=0.3, mu=0.9, j=1.0)
        hset = build_hybrid(model)
        numeric = numeric_eigensystem(hset.h_static, np.diag(hset.gen_diag))
        closed = sorted(
            ((round(float(np.dot(hset.gen_diag,
                                 np.abs(b.static_ket) ** 2)), 6), b.energy)
             for b in all_branches(hset)))
        got = sorted((round(float(label), 6), float(val))
                     for val, _, label in numeric)
        for (lc, ec), (lg, eg) in zip(closed, got):
            assert lc == pytest.approx(lg, abs=1e-6)
            assert ec == pytest.approx(eg, abs=1e-10)

    def test_vectors_are_eigenvectors(self):
        model = HybridModel(B=0.9, theta=0.5, omega=0.2, mu=1.1, j=1.5)
        hset = build_hybrid(model)
        labels = np.diag(hset.gen_diag)
        for val, vec, _ in numeric_eigensystem(hset.h_static, labels):
            res = np.linalg.norm(hset.h_static @ vec - val * vec)
            assert res <= 1e-9 * np.linalg.norm(hset.h_static, 2)
            k = next(i for i in range(len(vec)) if abs(vec[i]) > 1e-8)
            assert vec[k].real > 0  # gauge-fixed

    def test_oscillator_truncation_corner_trips_guard(self):
        # the displaced number operator violates excitation blocking near
        # the Fock edge; the default guard must refuse rather than mislabel
        model = OscillatorModel(nu=1.0, g=0.8, beta_mag=0.3, omega=0.1,
                                n_max=14)
        hset = build_oscillator(model)
        labels = np.diag(hset.gen_diag)
        with pytest.raises(LabelingError):
            numeric_eigensystem(hset.h_static, labels)
        # loosening the guard keeps the low excitation blocks clean: their
        # restricted energies match the closed forms to machine precision
        triples = numeric_eigensystem(hset.h_static, labels, block_tol=0.5)
        by_label = {}
        for val, _, lab in triples:
            by_label.setdefault(int(round(float(lab))), []).append(float(val))
        assert_allclose(by_label[0], [0.0], atol=1e-12)
        for q in (1, 2, 3):
            want = sorted(
                oscillator_eigensystem(model, q - 1, b).energy
                for b in ("+", "-"))
            assert_allclose(sorted(by_label[q]), want, atol=1e-9)

    def test_rejects_nonhermitian(self):
        h = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(InvalidInputError):
            numeric_eigensystem(h, np.diag([0.0, 1.0]))

    def test_rejects_noncommuting_label(self):
        # a label that splits an actual eigen-block leaves off-block mass
        model = HybridModel(B=1.1, theta=0.7, omega=0.3, mu=0.9, j=1.0)
        hset = build_hybrid(model)
        bogus = np.diag(np.arange(float(hset.dim)))
        with pytest.raises(LabelingError):
            numeric_eigensystem(hset.h_static, bogus)
