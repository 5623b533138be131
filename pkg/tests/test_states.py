import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entgeo import (
    eig_hermitian,
    hs_norm,
    make_named,
    max_mixed,
    partial_transpose,
    sample_hs_random,
    state_from_json,
    state_to_json,
    validate_state,
)
from entgeo.states import DensityMatrix

random_state = st.builds(
    lambda seed, n: sample_hs_random(n, seed), st.integers(0, 2**32 - 1), st.sampled_from([4, 6, 8])
)


class TestNamedStates:
    def test_w_state_entries(self):
        rho = make_named("w_state")
        assert rho.dims == (2, 4)
        expected = np.zeros((8, 8))
        for i in (1, 2, 4):
            for j in (1, 2, 4):
                expected[i, j] = 1 / 3
        assert np.max(np.abs(rho.matrix - expected)) <= 1e-12

    def test_quasi_distillable_entries(self):
        rho = make_named("quasi_distillable")
        expected = np.zeros((4, 4))
        expected[1, 1] = expected[2, 2] = 0.25
        expected[1, 2] = expected[2, 1] = -0.25
        expected[3, 3] = 0.5
        assert np.max(np.abs(rho.matrix - expected)) <= 1e-12

    def test_bell_psi_plus(self):
        rho = make_named("bell_psi_plus")
        expected = np.zeros((4, 4))
        expected[1:3, 1:3] = 0.5
        assert np.max(np.abs(rho.matrix - expected)) <= 1e-12

    def test_ff_anchors_are_valid_states(self):
        for tag in ("ff1_rho2", "ff2_rho2", "ff3_rho2", "ff4_rho2", "ff8_rho2", "bell_psi_minus_like"):
            rho = make_named(tag)
            validate_state(rho.matrix, rho.dims)

    def test_ff4_anchor_entries(self):
        rho = make_named("ff4_rho2")
        assert rho.matrix[0, 0] == pytest.approx(100 / 101)
        assert rho.matrix[0, 3] == pytest.approx(10 / 101)
        assert rho.matrix[3, 3] == pytest.approx(1 / 101)

    def test_max_mixed(self):
        assert np.allclose(make_named("max_mixed(4)").matrix, np.eye(4) / 4)
        assert np.allclose(make_named("max-mixed8").matrix, np.eye(8) / 8)
        assert max_mixed(4).dims == (2, 2)

    def test_unknown_tag(self):
        with pytest.raises(ValueError, match="unknown named state"):
            make_named("ghz")


class TestPartialTranspose:
    def test_identity_invariant(self):
        rho = max_mixed(4)
        assert np.array_equal(partial_transpose(rho, "B"), rho.matrix)

    def test_w_pt_spectrum_golden_values(self, w_pt_spectrum):
        pt = partial_transpose(make_named("w_state"), "B")
        assert np.allclose(np.linalg.eigvalsh(pt), w_pt_spectrum, atol=1e-12)

    def test_bell_pt_entries(self, bell):
        pt = partial_transpose(bell, "B")
        expected = np.diag([0.0, 0.5, 0.5, 0.0]).astype(complex)
        expected[0, 3] = expected[3, 0] = 0.5
        assert np.max(np.abs(pt - expected)) <= 1e-12

    @given(random_state)
    def test_involution_exact(self, rho):
        pt = DensityMatrix(partial_transpose(rho, "B"), rho.dims)
        assert np.array_equal(partial_transpose(pt, "B"), rho.matrix)

    @given(random_state)
    def test_hs_norm_preserved(self, rho):
        assert abs(hs_norm(partial_transpose(rho, "B")) - hs_norm(rho.matrix)) <= 1e-12

    @given(random_state)
    def test_pt_a_is_pt_b_then_full_transpose(self, rho):
        assert np.allclose(
            partial_transpose(rho, "A"), partial_transpose(rho, "B").T, atol=1e-15
        )

    @given(random_state)
    def test_trace_preserved(self, rho):
        assert np.trace(partial_transpose(rho, "B")) == pytest.approx(1.0, abs=1e-12)

    def test_at_most_one_negative_pt_eigenvalue_two_qubits(self):
        # bulk statistical property of two-qubit PT spectra
        violations = 0
        for seed in range(10_000):
            rho = sample_hs_random(4, seed)
            d = np.linalg.eigvalsh(partial_transpose(rho, "B"))
            if np.sum(d < -1e-12) > 1:
                violations += 1
        assert violations == 0


class TestSampling:
    def test_psd_trace_one_many_seeds(self):
        for seed in range(1000):
            rho = sample_hs_random(4, seed)
            validate_state(rho.matrix, rho.dims)

    def test_deterministic_per_seed(self):
        a = sample_hs_random(4, 1234)
        b = sample_hs_random(4, 1234)
        assert np.array_equal(a.matrix, b.matrix)

    def test_mean_purity_matches_hs_measure(self):
        # E[tr rho^2] = 2n/(n^2+1) under the Hilbert-Schmidt measure
        purities = [
            np.trace(sample_hs_random(4, seed).matrix @ sample_hs_random(4, seed).matrix).real
            for seed in range(10_000)
        ]
        assert np.mean(purities) == pytest.approx(8 / 17, abs=0.01)

    def test_mean_purity_independent_oracle(self):
        # same moment from a stdlib-RNG Ginibre sampler
        def sample(seed):
            rng = random.Random(seed)
            g = np.array(
                [[complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(4)] for _ in range(4)]
            )
            rho = g @ g.conj().T
            return rho / np.trace(rho).real

        purities = [np.trace(sample(s) @ sample(s)).real for s in range(4000)]
        assert np.mean(purities) == pytest.approx(8 / 17, abs=0.02)

    def test_rejects_dimension_one(self):
        with pytest.raises(ValueError):
            sample_hs_random(1, 0)


class TestValidateState:
    def test_max_mixed_ok(self):
        validate_state(np.eye(4) / 4, (2, 2))

    def test_w_pt_not_psd(self):
        pt = partial_transpose(make_named("w_state"), "B")
        with pytest.raises(ValueError, match=r"not PSD, min eigenvalue -0.471"):
            validate_state(pt, (2, 4))

    def test_trace_one_but_indefinite(self):
        # diag(0.5, 0.6, 0, -0.1) has trace exactly 1; positivity is what fails
        with pytest.raises(ValueError, match="not PSD"):
            validate_state(np.diag([0.5, 0.6, 0.0, -0.1]), (2, 2))

    def test_bad_trace(self):
        with pytest.raises(ValueError, match="trace"):
            validate_state(np.diag([0.5, 0.6, 0.0, 0.1]), (2, 2))

    def test_not_hermitian(self):
        m = np.eye(4) / 4
        m[0, 1] = 0.2
        with pytest.raises(ValueError, match="Hermitian"):
            validate_state(m, (2, 2))

    def test_dims_mismatch(self):
        with pytest.raises(ValueError, match="dims"):
            validate_state(np.eye(4) / 4, (2, 3))


class TestJson:
    def test_round_trip_w(self):
        rho = make_named("w_state")
        back = state_from_json(state_to_json(rho))
        assert np.array_equal(back.matrix, rho.matrix)
        assert back.dims == rho.dims

    @given(random_state)
    @settings(max_examples=25)
    def test_round_trip_random(self, rho):
        back = state_from_json(state_to_json(rho))
        assert np.array_equal(back.matrix, rho.matrix)

    def test_inconsistent_dims(self):
        doc = {"dims": [2, 3], "matrix": [[[0.2, 0.0]] * 5] * 5}
        with pytest.raises(ValueError, match="inconsistent"):
            state_from_json(json.dumps(doc))

    def test_malformed_document(self):
        with pytest.raises(ValueError, match="malformed"):
            state_from_json("{not json")

    def test_bell_fixture(self, bell):
        doc = {
            "dims": [2, 2],
            "matrix": [
                [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.5, 0.0], [0.5, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.5, 0.0], [0.5, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
            ],
        }
        parsed = state_from_json(json.dumps(doc))
        assert np.max(np.abs(parsed.matrix - bell.matrix)) <= 1e-12
