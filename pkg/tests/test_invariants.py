"""The invariant checks must actually catch broken inputs."""
import random

from conftest import load, load_matching

from golodkit import MerkulovTransfer, MorseReduction, taylor
from golodkit.cli import main
from golodkit.invariants import InvariantReport, check_reduction, check_transfer, random_ideal


def test_broken_homotopy_is_caught():
    T = taylor(load("fourgen"))
    R = MorseReduction(T, load_matching("fourgen_worked"))
    R.morse_complex  # built from the genuine homotopy
    R.phi = T.d  # degree −1, certainly not a splitting homotopy
    report = InvariantReport()
    check_reduction(T, R, report)
    assert not report.ok


def test_broken_higher_operation_is_caught():
    T = taylor(load("avramov"))
    tr = MerkulovTransfer(MorseReduction(T, load_matching("avramov_staged")))
    original = tr.nu_n

    def skewed(cells):
        val = original(cells)
        if len(cells) == 2:
            return val.scaled(2)
        return val

    tr.nu_n = skewed
    report = InvariantReport()
    check_transfer(tr, report, 3, sample=400, rng=random.Random(0))
    assert any(v.check == "Stasheff" for v in report.violations)


def test_verify_reports_a_reproducer(capsys, monkeypatch):
    def failing(ideal, field, seed=0, **kw):
        rep = InvariantReport()
        rep.add("synthetic", "forced failure")
        return rep

    monkeypatch.setattr("golodkit.cli.check_ideal", failing)
    code = main(["verify", "--count", "3", "--seed", "9"])
    out = capsys.readouterr().out
    assert code == 4
    assert out.startswith("FAIL random #0: synthetic: forced failure")
    assert "--seed 9" in out and "ideal: ring" in out


def test_random_ideals_respect_bounds():
    rng = random.Random(1)
    for _ in range(200):
        ideal = random_ideal(rng, max_gens=6, max_vars=5, max_exp=3)
        assert 1 <= ideal.r <= 6 and ideal.nvars <= 5
        assert all(max(g) <= 3 for g in ideal.generators)
