import math
import random

import pytest

from oracles import oracle_spearman
from tokeval import (
    Manifest,
    ManifestError,
    ManifestRecord,
    UndefinedCorrelationError,
    correlation_matrix,
    load_manifest,
    relative_change,
    spearman,
)


class TestSpearman:
    def test_monotone_increasing_is_one(self):
        assert spearman([1, 2, 3, 4], [10, 11, 15, 80]) == 1.0

    def test_monotone_decreasing_is_minus_one(self):
        assert spearman([1, 2, 3, 4], [5, 4, 2, -3]) == -1.0

    def test_tied_case_matches_oracle(self):
        xs = [1.0, 2.0, 2.0, 4.0]
        ys = [1.0, 3.0, 2.0, 4.0]
        assert spearman(xs, ys) == pytest.approx(oracle_spearman(xs, ys), abs=1e-12)

    def test_symmetry_and_self_correlation(self):
        xs = [3.0, 1.0, 4.0, 1.0, 5.0]
        ys = [2.0, 7.0, 1.0, 8.0, 2.0]
        assert spearman(xs, ys) == spearman(ys, xs)
        assert spearman(xs, xs) == 1.0

    def test_invariant_under_strictly_monotone_transform(self):
        rng = random.Random(5)
        xs = [rng.randint(0, 5) for _ in range(20)]
        ys = [rng.randint(0, 5) for _ in range(20)]
        base = spearman(xs, ys)
        assert spearman([math.exp(x) for x in xs], ys) == base
        assert spearman(xs, [y**3 for y in ys]) == base

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            spearman([1, 2], [1, 2, 3])

    def test_too_short(self):
        with pytest.raises(UndefinedCorrelationError):
            spearman([1.0], [2.0])

    def test_constant_series_undefined(self):
        with pytest.raises(UndefinedCorrelationError):
            spearman([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
        with pytest.raises(UndefinedCorrelationError):
            spearman([1.0, 2.0, 3.0], [5.0, 5.0, 5.0])


class TestRelativeChange:
    def test_no_change_is_zero(self):
        assert relative_change(88.7, 88.7, "increase") == 0.0

    def test_score_increase(self):
        # 94.4 over an 88.7 baseline
        assert relative_change(94.4, 88.7, "increase") == pytest.approx(0.0642615558, abs=1e-9)

    def test_decrease_orientation_flips_sign(self):
        assert relative_change(1.2, 2.0, "decrease") == pytest.approx(0.4)
        assert relative_change(2.4, 2.0, "decrease") == pytest.approx(-0.2)

    def test_zero_baseline_rejected(self):
        with pytest.raises(ValueError):
            relative_change(1.0, 0.0, "increase")

    def test_bad_orientation_rejected(self):
        with pytest.raises(ValueError):
            relative_change(1.0, 1.0, "sideways")


def record(lang, model, metrics=None, scores=None, corpus_words=None):
    return ManifestRecord(lang, model, metrics or {}, scores or {}, corpus_words)


def manifest_of(*records, baseline="multi"):
    return Manifest(tuple(records), baseline)


class TestManifest:
    def test_missing_baseline_language_rejected(self):
        with pytest.raises(ManifestError):
            manifest_of(record("aa", "mono"))

    def test_baseline_lookup(self):
        base = record("aa", "multi", {"fertility": 2.0})
        manifest = manifest_of(base, record("aa", "mono"))
        assert manifest.baseline_for("aa") is base

    def test_load_manifest_round_trip(self, data_dir):
        manifest = load_manifest(data_dir / "manifest_synthetic.json")
        assert manifest.baseline_model == "multi-base"
        assert len(manifest.records) == 12
        assert manifest.baseline_for("cc").corpus_words == 120000000

    def test_load_manifest_bad_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(ManifestError):
            load_manifest(bad)


def three_language_manifest():
    """Fertility deltas 0.5 > 0.25 > 0.1 co-ranked with task las, anti with sa."""
    return manifest_of(
        record("l1", "multi", {"fertility": 2.0}, {"las": 80.0, "sa": 90.0}, 100.0),
        record("l2", "multi", {"fertility": 2.0}, {"las": 80.0, "sa": 90.0}, 100.0),
        record("l3", "multi", {"fertility": 2.0}, {"las": 80.0, "sa": 90.0}, 100.0),
        record("l1", "mono", {"fertility": 1.0}, {"las": 88.0, "sa": 89.0}, 800.0),
        record("l2", "mono", {"fertility": 1.5}, {"las": 84.0, "sa": 89.5}, 400.0),
        record("l3", "mono", {"fertility": 1.8}, {"las": 81.6, "sa": 89.8}, 200.0),
    )


class TestCorrelationMatrix:
    def test_perfectly_ranked_factor_gives_one(self):
        matrix = correlation_matrix(three_language_manifest())
        assert matrix.cell("fertility_decrease", "las").rho == 1.0
        assert matrix.cell("fertility_decrease", "las").sample_size == 3

    def test_anti_ranked_factor_gives_minus_one(self):
        matrix = correlation_matrix(three_language_manifest())
        assert matrix.cell("fertility_decrease", "sa").rho == -1.0

    def test_corpus_size_factor_present_and_ranked(self):
        matrix = correlation_matrix(three_language_manifest())
        assert matrix.cell("corpus_words_increase", "las").rho == 1.0

    def test_missing_values_skip_pairs(self):
        manifest = manifest_of(
            record("l1", "multi", {"m": 2.0}, {"t": 80.0}),
            record("l2", "multi", {"m": 2.0}, {"t": 80.0}),
            record("l3", "multi", {"m": 2.0}, {"t": 80.0}),
            record("l1", "mono", {"m": 1.0}, {"t": 88.0}),
            record("l2", "mono", {"m": 1.5}, {"t": 84.0}),
            record("l3", "mono", {}, {"t": 82.0}),  # no metric: skipped
        )
        matrix = correlation_matrix(manifest)
        assert matrix.cell("m_decrease", "t").sample_size == 2

    def test_cells_with_too_few_pairs_are_absent_not_fabricated(self):
        manifest = manifest_of(
            record("l1", "multi", {"m": 2.0}, {"t": 80.0}),
            record("l2", "multi", {"m": 2.0}, {"t": 80.0}),
            record("l1", "mono", {"m": 1.0}, {"t": 88.0}),
            record("l2", "mono", {}, {"t": 84.0}),
        )
        matrix = correlation_matrix(manifest)
        cell = matrix.cell("m_decrease", "t")
        assert cell.rho is None
        assert cell.sample_size == 1

    def test_constant_series_cell_is_absent(self):
        manifest = manifest_of(
            record("l1", "multi", {"m": 2.0}, {"t": 80.0}),
            record("l2", "multi", {"m": 2.0}, {"t": 80.0}),
            record("l1", "mono", {"m": 2.0}, {"t": 88.0}),
            record("l2", "mono", {"m": 2.0}, {"t": 84.0}),
        )
        cell = correlation_matrix(manifest).cell("m_decrease", "t")
        assert cell.rho is None
        assert cell.sample_size == 2

    def test_record_order_invariance(self):
        manifest = three_language_manifest()
        reordered = Manifest(tuple(reversed(manifest.records)), manifest.baseline_model)
        assert correlation_matrix(manifest).cells == correlation_matrix(reordered).cells

    def test_exclude_language_filter(self):
        matrix = correlation_matrix(three_language_manifest(), exclude_languages=["l3"])
        assert matrix.cell("fertility_decrease", "las").sample_size == 2

    def test_average_submeasures_pools_prefixed_tasks(self):
        manifest = manifest_of(
            record("l1", "multi", {"m": 2.0}, {"udp_uas": 80.0, "udp_las": 78.0, "ner": 90.0}),
            record("l2", "multi", {"m": 2.0}, {"udp_uas": 80.0, "udp_las": 78.0, "ner": 90.0}),
            record("l3", "multi", {"m": 2.0}, {"udp_uas": 80.0, "udp_las": 78.0, "ner": 90.0}),
            record("l1", "mono", {"m": 1.0}, {"udp_uas": 88.0, "udp_las": 86.0, "ner": 90.1}),
            record("l2", "mono", {"m": 1.5}, {"udp_uas": 84.0, "udp_las": 82.0, "ner": 90.3}),
            record("l3", "mono", {"m": 1.8}, {"udp_uas": 81.0, "udp_las": 79.0, "ner": 90.5}),
        )
        matrix = correlation_matrix(manifest, average_submeasures=True)
        assert matrix.tasks == ("ner", "udp")
        assert matrix.cell("m_decrease", "udp").rho == 1.0

    def test_synthetic_manifest_matches_oracle(self, data_dir):
        manifest = load_manifest(data_dir / "manifest_synthetic.json")
        matrix = correlation_matrix(manifest)
        points = [r for r in manifest.records if r.model_name != manifest.baseline_model]
        for factor in matrix.factors:
            for task in matrix.tasks:
                xs, ys = [], []
                for r in points:
                    base = manifest.baseline_for(r.language_tag)
                    if factor == "corpus_words_increase":
                        if r.corpus_words is None or base.corpus_words is None:
                            continue
                        fv = (r.corpus_words - base.corpus_words) / base.corpus_words
                    else:
                        name = factor.removesuffix("_decrease")
                        if name not in r.metrics or name not in base.metrics:
                            continue
                        fv = -(r.metrics[name] - base.metrics[name]) / base.metrics[name]
                    if task not in r.scores or task not in base.scores:
                        continue
                    sv = (r.scores[task] - base.scores[task]) / base.scores[task]
                    xs.append(fv)
                    ys.append(sv)
                cell = matrix.cell(factor, task)
                assert cell.sample_size == len(xs)
                if len(xs) >= 2 and len(set(xs)) >= 2 and len(set(ys)) >= 2:
                    assert cell.rho == pytest.approx(oracle_spearman(xs, ys), abs=1e-12)
                else:
                    assert cell.rho is None

    def test_csv_layout(self):
        matrix = correlation_matrix(three_language_manifest())
        lines = matrix.to_csv().strip().split("\n")
        assert lines[0] == "factor," + ",".join(matrix.tasks)
        assert len(lines) == 1 + len(matrix.factors)
        assert lines[1].startswith("corpus_words_increase,") or lines[1].startswith(
            "fertility_decrease,"
        )
