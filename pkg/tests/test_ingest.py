import io
from collections import Counter

import pytest

from asnqual.dominance import pareto_violation_ratio
from asnqual.indicators import IndicatorKind
from asnqual.ingest import (
    AREA_ACRONYMS,
    BIBLIOMETRIC_EXCEPTIONS,
    NON_BIBLIOMETRIC_EXCEPTIONS,
    DisciplineRegistryEntry,
    RoundDataset,
    discipline_kind,
    load_default_registry,
    load_round,
    parse_applications,
    parse_medians,
    parse_registry,
    write_applications,
    write_medians,
    write_registry,
)
from asnqual.synth import (
    ComponentModel,
    DecisionModel,
    DisciplinePlan,
    SynthConfig,
    default_synth_config,
    synthesize_round,
)
from asnqual.thresholds import DisciplineId, MedianIndex, Role, Standing, classify

APPS_HEADER = "last_name,first_name,discipline,sub_discipline,role,ind1,ind2,ind3,qualified\n"
MEDIANS_HEADER = "discipline,sub_discipline,role,kind,m1,m2,m3\n"


def apps_csv(*rows):
    return io.StringIO(APPS_HEADER + "".join(r + "\n" for r in rows))


def medians_csv(*rows):
    return io.StringIO(MEDIANS_HEADER + "".join(r + "\n" for r in rows))


class TestRegistry:
    def test_has_all_disciplines(self):
        registry = load_default_registry()
        assert len(registry) == 184
        per_area = Counter(e.discipline.area for e in registry)
        expected = dict(
            zip(
                [f"{i:02d}" for i in range(1, 15)],
                (7, 6, 8, 4, 13, 26, 14, 12, 20, 19, 17, 16, 15, 7),
            )
        )
        assert per_area == expected

    def test_kind_partition(self):
        registry = load_default_registry()
        kinds = {e.discipline.code: e.kind for e in registry}
        for code, kind in kinds.items():
            area = int(code[:2])
            if code in NON_BIBLIOMETRIC_EXCEPTIONS:
                assert kind is IndicatorKind.NON_BIBLIOMETRIC
            elif code in BIBLIOMETRIC_EXCEPTIONS:
                assert kind is IndicatorKind.BIBLIOMETRIC
            elif area <= 9:
                assert kind is IndicatorKind.BIBLIOMETRIC
            else:
                assert kind is IndicatorKind.NON_BIBLIOMETRIC

    def test_acronyms_cover_every_area(self):
        assert len(AREA_ACRONYMS) == 14
        assert AREA_ACRONYMS["01"] == "MCS"
        assert AREA_ACRONYMS["14"] == "PSS"

    def test_discipline_kind_rule(self):
        assert discipline_kind("01/A1") is IndicatorKind.BIBLIOMETRIC
        assert discipline_kind("08/C1") is IndicatorKind.NON_BIBLIOMETRIC
        assert discipline_kind("11/E2") is IndicatorKind.BIBLIOMETRIC
        assert discipline_kind("12/A1") is IndicatorKind.NON_BIBLIOMETRIC
        with pytest.raises(ValueError, match="unknown area"):
            discipline_kind("77/A1")

    def test_entry_rejects_wrong_acronym(self):
        with pytest.raises(ValueError, match="acronym"):
            DisciplineRegistryEntry(
                DisciplineId.parse("01/A1"), "PHY", IndicatorKind.BIBLIOMETRIC
            )

    def test_entry_rejects_wrong_kind(self):
        with pytest.raises(ValueError, match="must be"):
            DisciplineRegistryEntry(
                DisciplineId.parse("01/A1"), "MCS", IndicatorKind.NON_BIBLIOMETRIC
            )

    def test_parse_rejects_duplicates(self):
        source = io.StringIO(
            "discipline,area_acronym,kind\n01/A1,MCS,B\n01/A1,MCS,B\n"
        )
        with pytest.raises(ValueError, match="duplicate"):
            parse_registry(source)

    def test_round_trip(self):
        registry = load_default_registry()
        buffer = io.StringIO()
        write_registry(registry, buffer)
        reparsed, diagnostics = parse_registry(io.StringIO(buffer.getvalue()))
        assert diagnostics == []
        assert reparsed == registry


class TestParseApplications:
    def test_well_formed_rows(self):
        records, diagnostics = parse_applications(
            apps_csv(
                "Rossi,Maria,01/A1,,1,11,15,6,true",
                "Bianchi,Luca,01/A1,,2,5,5,5,false",
                "Verdi,Anna,10/A1,,1,2,3,1,true",
            )
        )
        assert diagnostics == []
        assert len(records) == 3
        assert records[0].indicators.as_tuple() == (11, 15, 6)
        assert records[0].indicators.kind is IndicatorKind.BIBLIOMETRIC
        assert records[2].indicators.kind is IndicatorKind.NON_BIBLIOMETRIC
        assert records[1].role is Role.ASSOCIATE
        assert records[1].qualified is False

    def test_unknown_role_is_skipped_with_a_diagnostic(self):
        records, diagnostics = parse_applications(
            apps_csv("Rossi,Maria,01/A1,,3,1,1,1,true", "Bianchi,Luca,01/A1,,1,1,1,1,true")
        )
        assert len(records) == 1
        assert len(diagnostics) == 1
        assert "unknown role" in diagnostics[0].message
        assert diagnostics[0].line == 2

    def test_missing_indicator_names_the_column(self):
        records, diagnostics = parse_applications(
            apps_csv("Rossi,Maria,01/A1,,1,1,,1,true")
        )
        assert records == []
        assert "ind2" in diagnostics[0].message

    def test_negative_indicator_is_skipped(self):
        records, diagnostics = parse_applications(
            apps_csv("Rossi,Maria,01/A1,,1,-1,1,1,true")
        )
        assert records == []
        assert len(diagnostics) == 1

    def test_bad_boolean_is_skipped(self):
        records, diagnostics = parse_applications(
            apps_csv("Rossi,Maria,01/A1,,1,1,1,1,maybe")
        )
        assert records == []
        assert "boolean" in diagnostics[0].message

    def test_duplicate_application_is_a_hard_error(self):
        with pytest.raises(ValueError, match="duplicate application"):
            parse_applications(
                apps_csv(
                    "Rossi,Maria,01/A1,,1,1,1,1,true",
                    "Rossi,Maria,01/A1,,1,2,2,2,false",
                )
            )

    def test_same_name_in_another_role_is_allowed(self):
        records, diagnostics = parse_applications(
            apps_csv(
                "Rossi,Maria,01/A1,,1,1,1,1,true",
                "Rossi,Maria,01/A1,,2,1,1,1,true",
            )
        )
        assert len(records) == 2
        assert diagnostics == []

    def test_unknown_discipline_is_a_hard_error(self):
        with pytest.raises(ValueError, match="not in the registry"):
            parse_applications(apps_csv("Rossi,Maria,01/Z9,,1,1,1,1,true"))

    def test_missing_column_is_a_hard_error(self):
        source = io.StringIO("last_name,first_name,discipline\nRossi,Maria,01/A1\n")
        with pytest.raises(ValueError, match="missing columns"):
            parse_applications(source)

    def test_sub_discipline_is_kept(self):
        records, _ = parse_applications(
            apps_csv("Rossi,Maria,13/A1,13/A1-x,1,1,1,1,true")
        )
        assert records[0].discipline.sub_discipline == "13/A1-x"


class TestParseMedians:
    def test_fixture_of_four_rows(self):
        sets, diagnostics = parse_medians(
            medians_csv(
                "01/A1,,1,B,10,13.2,7",
                "01/A1,,2,B,8,11,5",
                "10/A1,,1,NB,1,2,0.5",
                "10/A1,,2,NB,0.5,1.5,0.2",
            )
        )
        assert diagnostics == []
        assert len(sets) == 4
        assert sets[0].as_tuple() == (10, 13.2, 7)
        assert sets[2].kind is IndicatorKind.NON_BIBLIOMETRIC

    def test_duplicate_is_a_hard_error(self):
        with pytest.raises(ValueError, match="duplicate median set"):
            parse_medians(medians_csv("01/A1,,1,B,1,1,1", "01/A1,,1,B,2,2,2"))

    def test_negative_median_is_rejected_with_a_diagnostic(self):
        sets, diagnostics = parse_medians(medians_csv("01/A1,,1,B,-1,1,1"))
        assert sets == []
        assert len(diagnostics) == 1
        assert diagnostics[0].severity == "error"

    def test_zero_bibliometric_median_draws_a_warning_but_is_kept(self):
        sets, diagnostics = parse_medians(medians_csv("01/A1,,1,B,0,1,1"))
        assert len(sets) == 1
        assert len(diagnostics) == 1
        assert diagnostics[0].severity == "warning"

    def test_zero_non_bibliometric_median_is_silent(self):
        sets, diagnostics = parse_medians(medians_csv("10/A1,,1,NB,0,1,1"))
        assert len(sets) == 1
        assert diagnostics == []

    def test_unknown_kind_is_skipped(self):
        sets, diagnostics = parse_medians(medians_csv("01/A1,,1,X,1,1,1"))
        assert sets == []
        assert "unknown kind" in diagnostics[0].message


class TestRoundDataset:
    def build(self):
        apps, _ = parse_applications(apps_csv("Rossi,Maria,01/A1,,1,11,15,6,true"))
        sets, _ = parse_medians(medians_csv("01/A1,,1,B,10,13.2,7"))
        return RoundDataset(apps, sets, load_default_registry())

    def test_valid_dataset(self):
        assert self.build().validate() == []

    def test_missing_median_set_is_reported(self):
        dataset = self.build()
        stripped = RoundDataset(dataset.applications, [], dataset.registry)
        problems = stripped.validate()
        assert any("no median set" in p for p in problems)

    def test_median_kind_disagreement_is_reported(self):
        apps, _ = parse_applications(apps_csv("Rossi,Maria,01/A1,,1,11,15,6,true"))
        sets, _ = parse_medians(medians_csv("01/A1,,1,NB,10,13.2,7"))
        problems = RoundDataset(apps, sets, load_default_registry()).validate()
        assert any("disagrees with registry" in p for p in problems)

    def test_round_trip_through_files(self, tmp_path):
        dataset = synthesize_round(default_synth_config(), 11)
        apps_path = tmp_path / "applications.csv"
        medians_path = tmp_path / "medians.csv"
        registry_path = tmp_path / "registry.csv"
        write_applications(dataset.applications, apps_path)
        write_medians(dataset.medians, medians_path)
        write_registry(dataset.registry, registry_path)
        reparsed, diagnostics = load_round(apps_path, medians_path, registry_path)
        assert diagnostics == []
        assert list(reparsed.applications) == list(dataset.applications)
        assert list(reparsed.medians) == list(dataset.medians)
        assert list(reparsed.registry) == list(dataset.registry)

    def test_serialization_is_stable(self):
        dataset = synthesize_round(default_synth_config(), 11)
        first, second = io.StringIO(), io.StringIO()
        write_applications(dataset.applications, first)
        write_applications(dataset.applications, second)
        assert first.getvalue() == second.getvalue()


def tiny_plan(**overrides):
    base = dict(
        discipline="01/A1",
        n_full=15,
        n_associate=20,
        components=(
            ComponentModel("lognormal", (1.5, 0.7)),
            ComponentModel("gamma", (2.0, 2.0)),
            ComponentModel("poisson", (4.0,)),
        ),
    )
    base.update(overrides)
    return DisciplinePlan(**base)


class TestSynth:
    def test_same_seed_yields_identical_datasets(self):
        config = default_synth_config()
        a = synthesize_round(config, 42)
        b = synthesize_round(config, 42)
        assert list(a.applications) == list(b.applications)
        assert list(a.medians) == list(b.medians)

    def test_different_seeds_differ(self):
        config = default_synth_config()
        a = synthesize_round(config, 1)
        b = synthesize_round(config, 2)
        assert list(a.applications) != list(b.applications)

    def test_generated_dataset_is_valid(self):
        dataset = synthesize_round(default_synth_config(), 3)
        assert dataset.validate() == []

    def test_strict_median_qualifies_exactly_the_over_median(self):
        config = SynthConfig((tiny_plan(),))
        dataset = synthesize_round(config, 5)
        index = MedianIndex(dataset.medians)
        for app in dataset.applications:
            m = index.resolve(app.discipline, app.role)
            over = classify(app.indicators, m) is Standing.OVER_MEDIAN
            assert app.qualified == over

    def test_strict_and_relaxed_models_admit_no_violations(self):
        for decision in (DecisionModel.STRICT_MEDIAN, DecisionModel.RELAXED):
            config = SynthConfig((tiny_plan(decision=decision, n_full=40, n_associate=40),))
            dataset = synthesize_round(config, 9)
            for role in (Role.FULL, Role.ASSOCIATE):
                group = [a for a in dataset.applications if a.role is role]
                assert pareto_violation_ratio(group).ratio == 0.0

    def test_zero_flip_probability_equals_strict(self):
        strict = SynthConfig((tiny_plan(),))
        noisy = SynthConfig((tiny_plan(decision=DecisionModel.NOISY_THRESHOLD, flip_probability=0.0),))
        a = synthesize_round(strict, 21)
        b = synthesize_round(noisy, 21)
        assert [x.qualified for x in a.applications] == [x.qualified for x in b.applications]

    def test_invalid_distribution_parameters_are_errors(self):
        with pytest.raises(ValueError, match="sigma"):
            ComponentModel("lognormal", (1.0, 0.0))
        with pytest.raises(ValueError, match="unknown distribution"):
            ComponentModel("zipf", (1.0,))
        with pytest.raises(ValueError, match="parameters"):
            ComponentModel("gamma", (1.0,))

    def test_invalid_plan_parameters_are_errors(self):
        with pytest.raises(ValueError, match="flip probability"):
            tiny_plan(decision=DecisionModel.NOISY_THRESHOLD, flip_probability=1.5)
        with pytest.raises(ValueError, match="nonnegative"):
            tiny_plan(n_full=-1)
        with pytest.raises(ValueError, match="quantile"):
            tiny_plan(relaxed_quantile=1.0)

    def test_unknown_discipline_is_an_error(self):
        config = SynthConfig((tiny_plan(),))
        with pytest.raises(ValueError, match="not in the registry"):
            synthesize_round(config, 0, registry=[])

    def test_config_json_round_trip(self):
        config = default_synth_config()
        assert SynthConfig.from_json(config.to_json()) == config

    def test_malformed_config_is_an_error(self):
        with pytest.raises(ValueError, match="malformed synth config"):
            SynthConfig.from_json("{}")

    def test_duplicate_plans_are_an_error(self):
        with pytest.raises(ValueError, match="duplicate"):
            SynthConfig((tiny_plan(), tiny_plan()))
