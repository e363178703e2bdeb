from pathlib import Path

import pytest
import sympy

from mrclab.lib.cubic_lab import (
    ExperimentConfig,
    SurfaceSpec,
    fermat_cubic,
    generality_signature,
    is_smooth,
    make_surface,
    minimal_diagram,
    random_cubic,
    run_experiment,
    run_first_link_experiment,
    sample_points,
)
from mrclab.lib.errors import ConfigError, IdealError, SamplingError
from mrclab.lib.ideal_ops import T, hilbert_function, hilbert_series_numerator, vanishing_ideal, write_points
from mrclab.lib.mrc import FamilyTag, expected_resolution, predicted_diagram
from mrclab.lib.polyring import PolyRing, PrimeField
from mrclab.lib.reports import render_run, strip_timings, trials_frame


# ---------- surfaces ----------

def test_fermat_cubic_is_smooth_away_from_3():
    assert fermat_cubic(7).smoothness_checked
    with pytest.raises(ConfigError):
        fermat_cubic(3)


def test_is_smooth(small_ring):
    assert is_smooth(small_ring.parse("x0^3 + x1^3 + x2^3 + x3^3"))
    # a cone over a plane cubic is singular at its vertex
    assert not is_smooth(small_ring.parse("x0^3 + x1^3 + x2^3"))
    assert not is_smooth(small_ring.parse("x0*x1*x2 - x3^3"))
    with pytest.raises(IdealError):
        is_smooth(small_ring.parse("x0^2"))


def test_surface_must_be_a_cubic(small_ring):
    with pytest.raises(IdealError):
        SurfaceSpec(small_ring.parse("x0^2*x1 + x2"), "test")


def test_random_cubic_is_smooth_and_seeded():
    s = random_cubic(PrimeField(101), seed=5)
    assert s.smoothness_checked
    assert is_smooth(s.f)
    assert random_cubic(PrimeField(101), seed=5).f == s.f
    assert s.to_json()["provenance"] == "random(5)"


def test_make_surface():
    assert make_surface("fermat", 101, 0).provenance == "fermat"
    with pytest.raises(ConfigError):
        make_surface("torus", 101, 0)


# ---------- sampling ----------

def test_sample_points_lie_on_the_surface(small_fermat):
    points = sample_points(small_fermat, 20, seed=1)
    assert len(points) == 20
    assert len(set(points)) == 20
    assert all(small_fermat.contains(pt) for pt in points)


def test_sampling_is_deterministic(small_fermat):
    assert sample_points(small_fermat, 10, seed=3) == sample_points(small_fermat, 10, seed=3)
    assert sample_points(small_fermat, 10, seed=3) != sample_points(small_fermat, 10, seed=4)


def test_sampling_runs_out_of_points():
    # over F_5 cubing is a bijection, so the Fermat surface has |P^2(F_5)| = 31 points
    ring = PolyRing(PrimeField(5))
    surface = SurfaceSpec(ring.parse("x0^3 + x1^3 + x2^3 + x3^3"), "fermat")
    assert len(sample_points(surface, 31, seed=0)) == 31
    with pytest.raises(SamplingError):
        sample_points(surface, 32, seed=0)
    with pytest.raises(SamplingError):
        sample_points(surface, 0, seed=0)


def test_general_points_have_the_generic_hilbert_function(fermat):
    points = sample_points(fermat, 12, seed=2)
    I = vanishing_ideal(points, 5, fermat.ring)
    assert fermat.f in I
    assert generality_signature(I, 12, 5)
    assert minimal_diagram(I) == expected_resolution(FamilyTag.M, 3).betti()


# ---------- configuration ----------

@pytest.mark.parametrize("kwargs", [
    {},
    {"z": 22, "trials": 0},
    {"family": "m"},
    {"a": 3},
    {"family": "q", "a": 3},
    {"family": "m", "a": 2},
    {"family": "m", "a": 4, "z": 22},
    {"z": 12},
    {"z": 22, "surface": "torus"},
    {"z": 22, "prime": 3},
    {"z": 22, "prime": 4},
    {"z": 22, "trials": 2, "points_file": Path("z.txt")},
])
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        ExperimentConfig(**kwargs).validate()


def test_output_must_be_a_file(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig(z=22, output=tmp_path).validate()
    cfg = ExperimentConfig(z=22, output=tmp_path / "z22.json").validate()
    assert cfg.to_json()["output"] == str(tmp_path / "z22.json")
    assert ExperimentConfig(z=22).to_json()["output"] is None


def test_config_properties():
    cfg = ExperimentConfig(family="o", a=4).validate()
    assert cfg.point_count == 23
    assert cfg.d_max == 6
    assert cfg.to_json()["family"] == "o"
    assert ExperimentConfig(z=22).validate().d_max == 6


def test_trial_seeds():
    cfg = ExperimentConfig(z=22, seed=7)
    assert cfg.trial_seed(0) == ExperimentConfig(z=22, seed=7).trial_seed(0)
    assert len({cfg.trial_seed(i, attempt) for i in range(3) for attempt in range(2)}) == 6


def test_config_targets():
    assert ExperimentConfig(family="m", a=3).target() == expected_resolution("m", 3).betti()
    assert ExperimentConfig(family="p", a=4).target() == expected_resolution("p", 4).betti()
    assert ExperimentConfig(z=22).target() == predicted_diagram(22).diagram


# ---------- end to end ----------

@pytest.mark.slow
def test_verify_run_for_m3():
    cfg = ExperimentConfig(family="m", a=3, seed=11, trials=2)
    report = run_experiment(cfg, progress=False)
    assert report.passed
    payload = report.to_json()
    assert payload["kind"] == "verify"
    assert payload["config"]["z"] == 12
    assert [t["index"] for t in payload["trials"]] == [0, 1]
    assert all(t["mrc"] is None for t in payload["trials"])
    assert list(trials_frame(report).columns)[-1] == "passed"
    assert render_run(report).endswith("PASS")


@pytest.mark.slow
def test_runs_are_reproducible():
    cfg = ExperimentConfig(z=19, seed=3)
    first = run_experiment(cfg, progress=False).to_json()
    second = run_experiment(cfg, progress=False).to_json()
    assert strip_timings(first) == strip_timings(second)
    assert first["trials"][0]["mrc"]["passed"]


@pytest.mark.slow
def test_points_file_run(tmp_path, fermat):
    points = sample_points(fermat, 12, seed=9)
    path = tmp_path / "m3.txt"
    write_points(path, points)
    report = run_experiment(ExperimentConfig(family="m", a=3, points_file=path), progress=False)
    assert report.passed
    assert report.trials[0].points == points
    assert report.trials[0].seeds and len(report.trials[0].seeds) == 1


@pytest.mark.slow
def test_22_points_on_the_fermat_cubic():
    report = run_experiment(ExperimentConfig(family="m", a=4, seed=1), progress=False)
    assert report.passed
    trial = report.trials[0]
    assert trial.diagram == predicted_diagram(22).diagram
    assert trial.diagram == expected_resolution(FamilyTag.M, 4).betti()
    I = vanishing_ideal(trial.points, 6, report.surface.ring)
    assert [hilbert_function(I, d) for d in range(6)] == [1, 4, 10, 19, 22, 22]
    expected = sympy.Poly(1 - T**3 - 9 * T**4 + 12 * T**5 - 3 * T**7, T, domain="ZZ")
    assert hilbert_series_numerator(I) == expected


@pytest.mark.slow
@pytest.mark.parametrize("family, z", [("n", 15), ("o", 13), ("p", 16)])
def test_families_at_3(family, z):
    report = run_experiment(ExperimentConfig(family=family, a=3, seed=4), progress=False)
    assert report.passed
    assert report.to_json()["config"]["z"] == z
    assert report.trials[0].diagram == expected_resolution(family, 3).betti()
    assert report.trials[0].generality


@pytest.mark.slow
def test_30_points_at_the_window_boundary():
    report = run_experiment(ExperimentConfig(z=30, seed=6), progress=False)
    assert report.passed
    trial = report.trials[0]
    assert trial.diagram == predicted_diagram(30).diagram
    assert trial.mrc is not None and trial.mrc.passed
    assert trial.hilbert_crosscheck


def test_points_file_with_the_wrong_size(tmp_path, fermat):
    path = tmp_path / "few.txt"
    write_points(path, sample_points(fermat, 5, seed=9))
    with pytest.raises(ConfigError):
        run_experiment(ExperimentConfig(family="m", a=3, points_file=path), progress=False)


def test_points_file_off_the_surface(tmp_path):
    path = tmp_path / "off.txt"
    path.write_text("\n".join(f"1,{k},0,0" for k in range(12)) + "\n")
    with pytest.raises(IdealError):
        run_experiment(ExperimentConfig(family="m", a=3, points_file=path), progress=False)


@pytest.mark.slow
def test_first_link_at_3():
    report = run_first_link_experiment(3, seed=0, p=32003)
    assert report.passed
    trial = report.trials[0]
    assert trial.diagram == expected_resolution(FamilyTag.N, 3).betti()
    assert trial.link["ci_degrees"] == [3, 3, 3]
    assert trial.link["degree_ledger"] == "27 = 12 + 15"
    assert trial.link["involution"] is True


def test_first_link_rejects_other_a():
    with pytest.raises(ConfigError):
        run_first_link_experiment(5, seed=0, p=32003)
