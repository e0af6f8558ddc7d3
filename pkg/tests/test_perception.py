import itertools

import numpy as np
import pytest

from babblebot.errors import DimensionMismatch, NotOneHot, UnlabeledCluster
from babblebot.homeostasis import NEEDS, NeedKind
from babblebot.perception import (
    OBJECTS,
    NeedPerceptron,
    ObjectKind,
    PerceptionModel,
    SomGrid,
    object_prototype,
    one_hot_state,
    predict_internal_state,
    recognize,
    satisfies,
    som_assign,
    som_train_step,
    stimulus_intensities,
    synth_features,
    widrow_hoff_update,
)
from babblebot.rng import substream


class TestSynthFeatures:
    def test_zero_noise_is_exact_prototype(self, rng):
        vf1 = synth_features(ObjectKind.COOKIE, 0.0, rng)
        vf2 = synth_features(ObjectKind.COOKIE, 0.0, rng)
        np.testing.assert_array_equal(vf1, object_prototype(ObjectKind.COOKIE))
        np.testing.assert_array_equal(vf1, vf2)

    def test_seeded_noise_is_reproducible(self):
        a = synth_features(ObjectKind.DRINK, 0.05, np.random.default_rng(5))
        b = synth_features(ObjectKind.DRINK, 0.05, np.random.default_rng(5))
        np.testing.assert_array_equal(a, b)

    def test_components_stay_in_unit_interval(self, rng):
        for _ in range(50):
            vf = synth_features(ObjectKind.TEDDY_BEAR, 0.5, rng)
            assert vf.min() >= 0.0 and vf.max() <= 1.0

    @pytest.mark.parametrize("dim", [3, 8, 16, 33])
    def test_prototypes_well_separated(self, dim):
        protos = [object_prototype(k, dim) for k in OBJECTS]
        for a, b in itertools.combinations(protos, 2):
            assert np.linalg.norm(a - b) >= 0.5 * np.sqrt(dim)


class TestSom:
    def test_zero_learning_rate_is_identity(self, rng):
        grid = SomGrid.create(rng=rng, lr_start=0.0, lr_end=0.0)
        before = grid.weights.copy()
        som_train_step(grid, synth_features(ObjectKind.COOKIE, 0.0, rng))
        np.testing.assert_array_equal(grid.weights, before)

    def test_single_node_full_pull(self, rng):
        grid = SomGrid.create(rows=1, cols=1, rng=rng, lr_start=1.0, lr_end=1.0)
        sample = synth_features(ObjectKind.DRINK, 0.0, rng)
        som_train_step(grid, sample)
        np.testing.assert_allclose(grid.weights[0], sample)

    def test_three_prototypes_get_distinct_bmus(self, rng):
        grid = SomGrid.create(rng=rng)
        for _ in range(100):
            for kind in OBJECTS:
                som_train_step(grid, object_prototype(kind), label=kind)
        bmus = {som_assign(grid, object_prototype(kind)) for kind in OBJECTS}
        assert len(bmus) == 3

    def test_assign_exact_match(self, rng):
        grid = SomGrid.create(rng=rng)
        idx = 7
        sample = grid.weights[idx].copy()
        assert som_assign(grid, sample) == idx

    def test_assign_tie_goes_to_lowest_index(self, rng):
        grid = SomGrid.create(rows=2, cols=2, rng=rng)
        grid.weights[2] = grid.weights[0].copy()
        assert som_assign(grid, grid.weights[0].copy()) == 0

    def test_assign_is_pure(self, rng):
        grid = SomGrid.create(rng=rng)
        sample = synth_features(ObjectKind.COOKIE, 0.05, rng)
        assert som_assign(grid, sample) == som_assign(grid, sample)

    def test_dimension_mismatch(self, rng):
        grid = SomGrid.create(rng=rng)
        with pytest.raises(DimensionMismatch):
            som_assign(grid, np.zeros(5))
        with pytest.raises(DimensionMismatch):
            som_train_step(grid, np.zeros(5))

    def test_schedule_decays_toward_end_values(self, rng):
        grid = SomGrid.create(rng=rng, decay_steps=10)
        lr0, r0 = grid.learning_rate, grid.radius
        for _ in range(20):
            som_train_step(grid, synth_features(ObjectKind.COOKIE, 0.0, rng))
        assert grid.learning_rate == pytest.approx(grid.lr_end)
        assert grid.radius == pytest.approx(grid.radius_end)
        assert grid.learning_rate < lr0 and grid.radius < r0


class TestPerceptronReadout:
    def test_zero_map_gives_zero_prediction(self):
        p = NeedPerceptron.create()
        vf = np.full(16, 0.5)
        np.testing.assert_array_equal(predict_internal_state(p, vf), np.zeros(3))

    def test_one_hot_features_extract_matrix_row(self, rng):
        p = NeedPerceptron.create()
        p.omega = rng.normal(size=(16, 3))
        vf = np.zeros(16)
        vf[4] = 1.0
        np.testing.assert_allclose(predict_internal_state(p, vf), p.omega[4])

    def test_matches_independent_inner_product(self, rng):
        p = NeedPerceptron.create()
        p.omega = rng.normal(size=(16, 3))
        vf = rng.uniform(size=16)
        expected = [
            sum(vf[i] * p.omega[i, j] for i in range(16)) for j in range(3)
        ]
        np.testing.assert_allclose(predict_internal_state(p, vf), expected, rtol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            predict_internal_state(NeedPerceptron.create(), np.zeros(4))


class TestWidrowHoff:
    def test_substitution(self):
        p = NeedPerceptron.create(dim=4, learning_rate=0.1)
        vf = np.array([1.0, 0.0, 0.0, 0.0])
        widrow_hoff_update(p, vf, one_hot_state(NeedKind.HUNGER))
        assert p.omega[0, 0] == pytest.approx(0.1)

    def test_fixed_point_when_target_reached(self, rng):
        p = NeedPerceptron.create(dim=4)
        vf = np.zeros(4)
        vf[1] = 1.0
        p.omega[1] = one_hot_state(NeedKind.THIRST)
        before = p.omega.copy()
        widrow_hoff_update(p, vf, one_hot_state(NeedKind.THIRST))
        np.testing.assert_array_equal(p.omega, before)

    def test_geometric_error_decay_for_unit_norm_features(self, rng):
        p = NeedPerceptron.create(dim=8, learning_rate=0.5)
        vf = rng.uniform(size=8)
        vf /= np.linalg.norm(vf)
        ris = one_hot_state(NeedKind.CURIOSITY)
        e0 = np.linalg.norm(ris - predict_internal_state(p, vf))
        for k in range(1, 10):
            widrow_hoff_update(p, vf, ris)
            err = np.linalg.norm(ris - predict_internal_state(p, vf))
            assert err == pytest.approx(e0 * (1 - 0.5) ** k, rel=1e-9)

    def test_update_linear_in_learning_rate(self, rng):
        vf = rng.uniform(size=16)
        ris = one_hot_state(NeedKind.HUNGER)
        base = rng.normal(size=(16, 3))
        p1 = NeedPerceptron(omega=base.copy(), learning_rate=0.05)
        p2 = NeedPerceptron(omega=base.copy(), learning_rate=0.1)
        widrow_hoff_update(p1, vf, ris)
        widrow_hoff_update(p2, vf, ris)
        np.testing.assert_allclose(p2.omega - base, 2.0 * (p1.omega - base), rtol=1e-12)

    def test_squared_error_decreases_below_stability_bound(self, rng):
        for _ in range(50):
            dim = int(rng.integers(3, 24))
            vf = rng.uniform(0.05, 1.0, size=dim)
            eps = float(rng.uniform(0.01, 1.0)) * min(1.0, 2.0 / (vf @ vf) * 0.999)
            p = NeedPerceptron(omega=rng.normal(size=(dim, 3)), learning_rate=eps)
            ris = one_hot_state(NeedKind.HUNGER)
            before = float(((ris - predict_internal_state(p, vf)) ** 2).sum())
            widrow_hoff_update(p, vf, ris)
            after = float(((ris - predict_internal_state(p, vf)) ** 2).sum())
            assert after < before

    def test_not_one_hot_rejected(self):
        p = NeedPerceptron.create(dim=4)
        with pytest.raises(NotOneHot):
            widrow_hoff_update(p, np.zeros(4), np.array([1.0, 1.0, 0.0]))
        with pytest.raises(NotOneHot):
            widrow_hoff_update(p, np.zeros(4), np.array([0.5, 0.5, 0.0]))

    def test_dimension_mismatch(self):
        p = NeedPerceptron.create(dim=4)
        with pytest.raises(DimensionMismatch):
            widrow_hoff_update(p, np.zeros(3), one_hot_state(NeedKind.HUNGER))


class TestRecognize:
    def train_model(self, noise=0.0, n_per_object=50, seed=0):
        model = PerceptionModel.create(noise_sigma=noise, rng=substream(seed, "som_init"))
        noise_rng = substream(seed, "noise")
        for _ in range(n_per_object):
            for kind in OBJECTS:
                vf = synth_features(kind, noise, noise_rng)
                model.observe(vf, kind)
        return model

    def test_clean_cookie_recognized_with_high_hunger_intensity(self):
        model = self.train_model()
        vf = synth_features(ObjectKind.COOKIE, 0.0, np.random.default_rng(1))
        kind, intensities = model.recognize(vf)
        assert kind is ObjectKind.COOKIE
        assert intensities[NeedKind.HUNGER].value == pytest.approx(1.0, abs=0.1)

    def test_untrained_readout_gives_zero_intensity(self, rng):
        p = NeedPerceptron.create()
        vf = synth_features(ObjectKind.DRINK, 0.05, rng)
        for s in stimulus_intensities(p, vf).values():
            assert s.value == 0.0

    def test_intensities_always_clamped(self, rng):
        p = NeedPerceptron.create()
        p.omega = rng.normal(scale=10.0, size=(16, 3))
        for _ in range(20):
            vf = synth_features(ObjectKind.COOKIE, 0.3, rng)
            for s in stimulus_intensities(p, vf).values():
                assert 0.0 <= s.value <= 1.0

    def test_unlabeled_cluster_before_training(self, rng):
        grid = SomGrid.create(rng=rng)
        p = NeedPerceptron.create()
        with pytest.raises(UnlabeledCluster):
            recognize(grid, p, synth_features(ObjectKind.COOKIE, 0.0, rng))

    def test_recognition_recovers_need_bijection_on_clean_data(self, rng):
        model = self.train_model()
        for kind in OBJECTS:
            pred, _ = model.recognize(synth_features(kind, 0.0, rng))
            assert satisfies(pred) is satisfies(kind)

    def test_noisy_heldout_accuracy(self):
        model = self.train_model(noise=0.05)
        eval_rng = substream(123, "noise")
        hits = 0
        for i in range(300):
            kind = OBJECTS[i % 3]
            pred, _ = model.recognize(synth_features(kind, 0.05, eval_rng))
            hits += pred is kind
        assert hits / 300 >= 0.95
