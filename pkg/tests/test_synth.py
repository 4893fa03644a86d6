import numpy as np
import pytest

from deepbarcodes import (
    BinarizationMethod,
    ConfigError,
    DistanceMetric,
    SearchConfig,
    SearchMode,
    SyntheticSpec,
    evaluate,
    generate,
    labels_from_results,
    run_search,
)


def eta_p_for(spec, config):
    train, train_labels, test, test_labels = generate(spec)
    results = run_search(train, test, config)
    retrieved = labels_from_results(results, train_labels)
    return evaluate(test_labels, retrieved).eta_p


REALVALUED_L2 = SearchConfig(mode=SearchMode.REAL_VALUED, metric=DistanceMetric.L2)


def test_fixed_seed_reproduces_exactly():
    spec = SyntheticSpec(classes=4, per_class=10, dim=8, separation=3.0, seed=42)
    a = generate(spec)
    b = generate(spec)
    assert a[0] == b[0]
    assert a[1] == b[1]
    assert a[2] == b[2]
    assert a[3] == b[3]


def test_different_seeds_differ():
    s1 = SyntheticSpec(classes=4, per_class=10, dim=8, separation=3.0, seed=1)
    s2 = SyntheticSpec(classes=4, per_class=10, dim=8, separation=3.0, seed=2)
    assert generate(s1)[0] != generate(s2)[0]


def test_shapes_and_labels():
    spec = SyntheticSpec(
        classes=5, per_class=7, dim=12, separation=2.0, seed=0, test_per_class=3
    )
    train, train_labels, test, test_labels = generate(spec)
    assert (train.rows, train.cols) == (35, 12)
    assert (test.rows, test.cols) == (15, 12)
    assert len(train_labels) == 35 and len(test_labels) == 15
    assert sorted(set(train_labels.labels.tolist())) == list(range(5))


def test_class_means_equidistant():
    spec = SyntheticSpec(
        classes=6, per_class=2000, dim=8, separation=5.0, seed=3, test_per_class=1
    )
    train, labels, _, _ = generate(spec)
    means = np.stack(
        [train.values[labels.labels == c].mean(axis=0) for c in range(6)]
    )
    for i in range(6):
        for j in range(i + 1, 6):
            d = np.linalg.norm(means[i] - means[j])
            assert d == pytest.approx(5.0, abs=0.2)


def test_disjoint_clusters_give_perfect_retrieval():
    spec = SyntheticSpec(
        classes=4, per_class=30, dim=8, separation=50.0, seed=4, test_per_class=10
    )
    assert eta_p_for(spec, REALVALUED_L2) == 1.0


def test_zero_separation_is_chance_level():
    spec = SyntheticSpec(
        classes=4, per_class=60, dim=8, separation=0.0, seed=5, test_per_class=60
    )
    eta_p = eta_p_for(spec, REALVALUED_L2)
    p = 1 / 4
    se = (p * (1 - p) / 240) ** 0.5
    assert abs(eta_p - p) < 3 * se


def test_eta_p_monotone_in_separation():
    etas = []
    for sep in (0.0, 2.0, 8.0):
        spec = SyntheticSpec(
            classes=6, per_class=40, dim=12, separation=sep, seed=6, test_per_class=10
        )
        etas.append(eta_p_for(spec, REALVALUED_L2))
    assert etas[0] <= etas[1] <= etas[2]


def test_barcode_sanity_on_separated_data():
    spec = SyntheticSpec(
        classes=6, per_class=40, dim=24, separation=10.0, seed=7, test_per_class=10
    )
    config = SearchConfig(
        mode=SearchMode.BARCODE_ONLY, method=BinarizationMethod.MIN_MAX
    )
    assert eta_p_for(spec, config) >= 0.9


def test_invalid_specs_rejected():
    with pytest.raises(ConfigError):
        SyntheticSpec(classes=1, per_class=5, dim=8, separation=1.0, seed=0).validate()
    with pytest.raises(ConfigError):
        SyntheticSpec(classes=4, per_class=5, dim=2, separation=1.0, seed=0).validate()
    with pytest.raises(ConfigError):
        SyntheticSpec(classes=4, per_class=5, dim=8, separation=-1.0, seed=0).validate()
