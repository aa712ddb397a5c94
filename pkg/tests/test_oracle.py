import os
import subprocess
import sys
from math import gcd

import pytest

from skewmorph.classify import enumerate_constructive
from skewmorph.errors import OracleTimeoutError
from skewmorph.oracle import CHECKPOINT_MAGIC, expand_by_units, jobs, oracle_exhaustive, oracle_pruned, time_cap
from skewmorph.perm import Permutation, mult_map
from skewmorph.zmod import Modulus

from _checks import SKEW_Z9


def units(n):
    return [u for u in range(1, n) if gcd(u, n) == 1]


def test_exhaustive_examples():
    five = oracle_exhaustive(5)
    assert five == {mult_map(u, Modulus(5, 1)) for u in range(1, 5)}
    assert len(oracle_exhaustive(7)) == 6
    assert {f.images for f in oracle_exhaustive(9)} == SKEW_Z9


@pytest.mark.parametrize("p", [3, 5, 7])
def test_exhaustive_on_primes_gives_automorphisms(p):
    assert oracle_exhaustive(p) == {mult_map(u, Modulus(p, 1)) for u in range(1, p)}


def test_exhaustive_bounds():
    assert oracle_exhaustive(1) == {Permutation([0])}
    with pytest.raises(ValueError):
        oracle_exhaustive(11)
    with pytest.raises(ValueError):
        oracle_exhaustive(0)


@pytest.mark.parametrize("n", range(1, 11))
def test_pruned_equals_exhaustive(n):
    assert oracle_pruned(n) == oracle_exhaustive(n)


def test_pruned_small_cases():
    assert oracle_pruned(3) == {Permutation([0, 1, 2]), Permutation([0, 2, 1])}
    assert oracle_pruned(2) == {Permutation([0, 1])}


def test_pruned_bounds():
    with pytest.raises(ValueError):
        oracle_pruned(28)
    assert len(oracle_pruned(11, bound=11)) == 10


def test_pruned_z25_matches_constructive():
    built = {r.images for r in enumerate_constructive(Modulus(5, 2))}
    assert {f.images for f in oracle_pruned(25)} == built


def test_pruned_z27_matches_constructive():
    stats = {}
    found = oracle_pruned(27, stats=stats)
    assert len(found) == 82
    assert {f.images for f in found} == {r.images for r in enumerate_constructive(Modulus(3, 3))}
    assert stats["total_nodes"] > 0 and set(stats["nodes"]) == set(range(1, 27))


def test_results_closed_under_unit_conjugation():
    for n in (9, 15, 21):
        found = oracle_pruned(n)
        assert expand_by_units(n, [f.images for f in found]) == found


def test_timeout_reports_progress(tmp_path):
    ckpt = tmp_path / "z27.ckpt"
    with pytest.raises(OracleTimeoutError) as info:
        oracle_pruned(27, time_limit=1e-9, checkpoint=str(ckpt))
    err = info.value
    assert len(err.completed) + len(err.remaining) == 26
    assert err.remaining


def test_checkpoint_resume(tmp_path):
    ckpt = tmp_path / "z15.ckpt"
    full = oracle_pruned(15, checkpoint=str(ckpt))
    text = ckpt.read_text().splitlines()
    assert text[0] == CHECKPOINT_MAGIC and text[1] == "n 15"
    # keep only the first two branch records and resume from there
    kept, seen = [], 0
    for line in text:
        if line.startswith("branch"):
            seen += 1
        if seen <= 2:
            kept.append(line)
    ckpt.write_text("\n".join(kept) + "\n")
    assert oracle_pruned(15, checkpoint=str(ckpt)) == full
    assert ckpt.read_text().splitlines() == text


def test_checkpoint_rejects_foreign_files(tmp_path):
    bad = tmp_path / "bad.ckpt"
    bad.write_text("hello\n")
    with pytest.raises(ValueError):
        oracle_pruned(9, checkpoint=str(bad))
    other = tmp_path / "other.ckpt"
    oracle_pruned(9, checkpoint=str(other))
    with pytest.raises(ValueError):
        oracle_pruned(15, checkpoint=str(other))


def test_parallel_workers_give_same_answer():
    assert oracle_pruned(21, workers=2) == oracle_pruned(21, workers=1)


def test_environment_settings(monkeypatch):
    monkeypatch.setenv("SKEWMORPH_TIME_CAP", "12.5")
    monkeypatch.setenv("SKEWMORPH_JOBS", "3")
    assert time_cap() == 12.5 and jobs() == 3
    monkeypatch.delenv("SKEWMORPH_TIME_CAP")
    monkeypatch.delenv("SKEWMORPH_JOBS")
    assert time_cap() == 600.0 and jobs() == 1


@pytest.mark.slow
def test_pure_python_backend_z27():
    code = (
        "import skewmorph; from skewmorph.oracle import oracle_pruned;"
        "assert skewmorph.BACKEND == 'python';"
        "print(len(oracle_pruned(27)))"
    )
    env = dict(os.environ, SKEWMORPH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, timeout=600)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "82"
