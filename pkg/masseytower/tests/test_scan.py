"""Scan configuration, JSONL records, ordered output and resume."""

import os

import pytest

from masseytower.errors import ConfigError, CorruptCache, TimeLimitExceeded
from masseytower.extension.provider import NativeCubicProvider
from masseytower.quadratic.forms import fundamental_discriminants
from masseytower.scan.config import ScanConfig
from masseytower.scan.records import ZassenhausReport, Status
from masseytower.scan import scanner
from masseytower.scan.report import report
from masseytower.scan.scanner import FieldWorker, has_errors, load_records, replay_record, resume, scan
from masseytower.tower.classify import INFINITE_REFERENCES, Verdict, classify_invariants

ZERO = ((0, 0), (0, 0))
ENV = ("MASSEY_PRIME", "MASSEY_TIME_LIMIT", "MASSEY_OUTPUT", "MASSEY_PROVIDER", "MASSEY_GRH", "MASSEY_JOBS", "MASSEY_SEED", "MASSEY_TIMINGS")


def _record(p, D, status=Status.COMPLETE, time_limit=300.0, factors=None):
    factors = factors or (p * p, p * p)
    r = ZassenhausReport(p, D, factors, 2, status, True, time_limit)
    if status is Status.COMPLETE:
        r.zm_entries = ZERO
        r.classification = classify_invariants(p, factors, ZERO)
    else:
        r.skip_reason = status.value
    return r


class FakeWorker(FieldWorker):
    """Every odd D is a 'rank two' field; status per D is configurable."""

    def __init__(self, config, statuses=None):
        super().__init__(config, NativeCubicProvider())
        self.statuses = statuses or {}
        self.calls = []

    def process(self, D):
        self.calls.append(D)
        if D % 2 == 0:
            return None
        return _record(self.config.p, D, self.statuses.get(D, Status.COMPLETE), self.config.per_entry_time_limit_seconds)


@pytest.fixture
def clean_env(monkeypatch):
    for name in ENV:
        monkeypatch.delenv(name, raising=False)


def _config(tmp_path, **kwargs):
    values = dict(p=3, disc_min=-80, disc_max=-3, output_path=str(tmp_path / "out.jsonl"))
    values.update(kwargs)
    return ScanConfig(**values)


def test_config_validation():
    for bad in (
        dict(p=4), dict(p=2), dict(disc_min=-3, disc_max=-10), dict(disc_max=5),
        dict(per_entry_time_limit_seconds=0), dict(parallelism=0), dict(provider_path="/no/such/file"),
        dict(output_path=""),
    ):
        with pytest.raises(ConfigError):
            ScanConfig(**bad).validate()
    ScanConfig().validate()


def test_config_from_env(clean_env, monkeypatch):
    monkeypatch.setenv("MASSEY_PRIME", "5")
    monkeypatch.setenv("MASSEY_JOBS", "4")
    monkeypatch.setenv("MASSEY_GRH", "false")
    config = ScanConfig.from_env(disc_min=-100, disc_max=-3, seed=None)
    assert (config.p, config.parallelism, config.grh_flag, config.seed) == (5, 4, False, 0)
    assert ScanConfig.from_env(p=7).p == 7
    monkeypatch.setenv("MASSEY_PRIME", "three")
    with pytest.raises(ConfigError):
        ScanConfig.from_env()


def test_record_round_trip():
    r = _record(5, -90868)
    again = ZassenhausReport.from_json(r.to_json())
    assert again == r
    assert again.classification.verdict is Verdict.INFINITE
    data = r.to_dict()
    data["schema_version"] = 99
    with pytest.raises(ValueError):
        ZassenhausReport.from_dict(data)


def test_timeout_is_terminal_only_under_the_same_limit():
    r = _record(3, -3299, Status.TIMEOUT, time_limit=10.0)
    assert r.is_terminal(10.0)
    assert not r.is_terminal(20.0)
    assert _record(3, -3299, Status.ERROR).is_terminal(1e9)


def test_empty_range_writes_empty_file(tmp_path):
    config = _config(tmp_path, disc_min=-2, disc_max=-1)
    assert list(scan(config, FakeWorker(config))) == []
    assert os.path.getsize(config.output_path) == 0


def test_scan_writes_in_discriminant_order(tmp_path):
    config = _config(tmp_path)
    worker = FakeWorker(config)
    records = list(scan(config, worker))
    order = list(fundamental_discriminants(config.disc_min, config.disc_max))
    assert worker.calls == order
    assert [r.D for r in records] == [D for D in order if D % 2]
    assert [r.D for r in load_records(config.output_path)] == [r.D for r in records]


def test_scan_is_deterministic(tmp_path):
    first = _config(tmp_path)
    second = _config(tmp_path, output_path=str(tmp_path / "again.jsonl"))
    list(scan(first, FakeWorker(first)))
    list(scan(second, FakeWorker(second)))
    with open(first.output_path, "rb") as a, open(second.output_path, "rb") as b:
        assert a.read() == b.read()


def test_resume_after_interruption(tmp_path):
    config = _config(tmp_path)
    list(scan(config, FakeWorker(config)))
    with open(config.output_path) as f:
        full = f.read()
    lines = full.splitlines(keepends=True)
    with open(config.output_path, "w") as f:
        f.writelines(lines[:3])
    worker = FakeWorker(config)
    resumed = list(resume(config, worker))
    order = list(fundamental_discriminants(config.disc_min, config.disc_max))
    last = ZassenhausReport.from_json(lines[2]).D
    assert worker.calls == order[order.index(last) + 1:]
    assert len(resumed) == len(lines) - 3
    with open(config.output_path) as f:
        assert f.read() == full


def test_resume_of_finished_scan_does_nothing(tmp_path):
    config = _config(tmp_path)
    list(scan(config, FakeWorker(config)))
    worker = FakeWorker(config)
    assert list(resume(config, worker)) == []
    assert not [D for D in worker.calls if D % 2]


def test_truncated_line_is_corrupt(tmp_path):
    config = _config(tmp_path)
    list(scan(config, FakeWorker(config)))
    with open(config.output_path) as f:
        text = f.read()
    with open(config.output_path, "w") as f:
        f.write(text[:-10])
    with pytest.raises(CorruptCache) as info:
        list(resume(config, FakeWorker(config)))
    assert info.value.line_number == len(text.splitlines())


def test_timeouts_are_redone_under_a_larger_limit(tmp_path):
    short = _config(tmp_path, per_entry_time_limit_seconds=1.0)
    odd = [D for D in fundamental_discriminants(short.disc_min, short.disc_max) if D % 2]
    slow = odd[1]
    list(scan(short, FakeWorker(short, {slow: Status.TIMEOUT})))
    assert list(resume(short, FakeWorker(short))) == []

    longer = _config(tmp_path, per_entry_time_limit_seconds=2.0)
    worker = FakeWorker(longer)
    redone = list(resume(longer, worker))
    assert [D for D in worker.calls if D % 2] == [slow]
    assert [r.D for r in redone] == [slow]
    records = load_records(longer.output_path)
    assert [r.D for r in records] == odd
    assert all(r.status is Status.COMPLETE for r in records)
    assert not os.path.exists(longer.output_path + ".partial")


def test_resume_refuses_another_prime(tmp_path):
    config = _config(tmp_path)
    list(scan(config, FakeWorker(config)))
    with pytest.raises(ConfigError):
        list(resume(_config(tmp_path, p=5), FakeWorker(config)))


def test_field_worker_skips_other_ranks(tmp_path):
    worker = FieldWorker(_config(tmp_path))
    assert worker.process(-23) is None
    assert worker.process(-7) is None


def test_field_worker_without_provider_data(tmp_path):
    record = FieldWorker(_config(tmp_path, p=5)).process(-90868)
    assert record.status is Status.SKIPPED
    assert "p=5" in record.skip_reason
    assert record.wall_times == {}
    assert not has_errors([record])


class CrashingEngine:
    """Raises a bare RuntimeError on D=-3299 and times out everywhere else."""

    def __init__(self, G, p, provider, **kwargs):
        self.D = G.D

    def zassenhaus_matrix(self):
        if self.D == -3299:
            raise RuntimeError("lost a generator")
        raise TimeLimitExceeded(1)


def test_unexpected_failure_becomes_an_error_record(tmp_path, monkeypatch):
    """One field crashing with a non-toolkit exception does not stop the scan."""
    monkeypatch.setattr(scanner, "MasseyEngine", CrashingEngine)
    config = _config(tmp_path, disc_min=-4030, disc_max=-3290)
    records = list(scan(config))
    by_D = {r.D: r for r in records}
    assert {-3299, -4027} <= set(by_D)
    assert by_D[-3299].status is Status.ERROR
    assert by_D[-3299].skip_reason == "RuntimeError: lost a generator"
    assert all(r.status is Status.TIMEOUT for D, r in by_D.items() if D != -3299)
    assert has_errors(records)
    assert [r.D for r in load_records(config.output_path)] == [r.D for r in records]


def test_has_errors():
    assert not has_errors([_record(3, -3299)])
    assert has_errors([_record(3, -3299), _record(3, -4027, Status.ERROR)])
    assert has_errors([_record(3, -3299, Status.TIMEOUT)])


def test_replay_needs_a_complete_record():
    with pytest.raises(ValueError):
        replay_record(_record(3, -3299, Status.TIMEOUT))


def test_report_groups_and_references():
    records = [_record(p, D, factors=(p, p)) for p, D in sorted(INFINITE_REFERENCES) if p == 5]
    records.append(_record(5, -90868, Status.SKIPPED))
    summary = report(records)
    assert summary.groups["Infinite"] == [(5, D) for p, D in sorted(INFINITE_REFERENCES) if p == 5]
    assert summary.groups["Unclassified"] == [(5, -90868)]
    assert summary.rank_two_counts == {5: 5}
    assert summary.status_counts == {"complete": 4, "skipped": 1}
    assert [label for _, _, label in summary.reference_matches] == ["infinite, agrees"] * 4
    assert any(line.startswith("  (p,D) = (5, ") for line in summary.lines())


@pytest.mark.slow
def test_real_scan_and_replay(tmp_path):
    config = _config(tmp_path, disc_min=-3299, disc_max=-3299, per_entry_time_limit_seconds=3600.0)
    (record,) = list(scan(config))
    assert record.status is Status.COMPLETE
    assert len(record.certificates) == 4
    assert replay_record(record).zm_rank == record.classification.zm_rank
