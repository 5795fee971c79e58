"""Batch scan over fundamental discriminants: class group, Zassenhaus matrix, verdict.

Records are written in the iteration order of the discriminants (ascending
|D|) whatever the number of workers: results come back unordered and wait
in a sequencing buffer until every earlier discriminant has been written.
"""

import logging
import os
import time
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Tuple

from ..errors import ConfigError, CorruptCache, MasseyToolkitError, NoProviderData, TimeLimitExceeded
from ..extension.provider import ExtensionProvider, default_provider
from ..massey.engine import MasseyCertificate, MasseyEngine, replay_certificate
from ..quadratic.classgroup import ClassGroupQF, class_group, p_rank
from ..quadratic.forms import fundamental_discriminants
from ..tower.classify import Classification, classify, classify_invariants, nine_divides_both
from .config import ScanConfig
from .records import Status, ZassenhausReport

logger = logging.getLogger("masseytower.scan")


class FieldWorker:
    """Computes the record of one discriminant; holds no state shared across fields."""

    def __init__(self, config: ScanConfig, provider: Optional[ExtensionProvider] = None):
        self.config = config
        self.provider = provider or default_provider(config.provider_path)

    def process(self, D: int) -> Optional[ZassenhausReport]:
        """The record for D, or None when the p-rank is not 2."""
        config = self.config
        p = config.p
        t0 = time.monotonic()
        G = class_group(D)
        rank = p_rank(G, p)
        if rank != 2:
            return None
        wall_times = {"class_group": time.monotonic() - t0}
        record = ZassenhausReport(
            p=p,
            D=D,
            invariant_factors=tuple(G.invariant_factors),
            p_rank=rank,
            status=Status.COMPLETE,
            grh_assumed=config.grh_flag,
            time_limit=config.per_entry_time_limit_seconds,
            nine_divides_both=nine_divides_both(G.invariant_factors) if p == 3 else None,
        )
        t1 = time.monotonic()
        try:
            engine = MasseyEngine(
                G, p, self.provider, seed=config.seed,
                time_limit=config.per_entry_time_limit_seconds, grh=config.grh_flag,
            )
            zm = engine.zassenhaus_matrix()
            wall_times["zassenhaus_matrix"] = time.monotonic() - t1
            record.zm_entries = zm.entries
            record.certificates = [c.to_dict() for c in zm.certificates]
            record.certificates_digest = zm.certificates_digest()
            record.classification = classify(p, G, zm)
        except TimeLimitExceeded as e:
            logger.warning(f"D={D}: {e}")
            record.status = Status.TIMEOUT
            record.skip_reason = str(e)
        except NoProviderData as e:
            logger.warning(f"D={D}: {e}")
            record.status = Status.SKIPPED
            record.skip_reason = str(e)
        except MasseyToolkitError as e:
            logger.error(f"D={D}: {type(e).__name__}: {e}")
            record.status = Status.ERROR
            record.skip_reason = f"{type(e).__name__}: {e}"
        except Exception as e:
            # a failure in one field becomes its record; the scan goes on
            logger.exception(f"D={D}: unexpected {type(e).__name__}")
            record.status = Status.ERROR
            record.skip_reason = f"{type(e).__name__}: {e}"
        if config.record_timings:
            record.wall_times = wall_times
        return record


WORKER: Optional[FieldWorker] = None


def worker_init(config: ScanConfig):
    global WORKER
    WORKER = FieldWorker(config)


def worker_do(item: Tuple[int, int]) -> Tuple[int, Optional[ZassenhausReport]]:
    index, D = item
    return index, WORKER.process(D)


def _ordered(config: ScanConfig, work: List[int], worker: Optional[FieldWorker] = None) -> Iterator[Tuple[int, Optional[ZassenhausReport]]]:
    """(D, record) in the order of ``work``."""
    if config.parallelism == 1 or len(work) < 2:
        worker = worker or FieldWorker(config)
        for D in work:
            yield D, worker.process(D)
        return
    pending: Dict[int, Optional[ZassenhausReport]] = {}
    next_index = 0
    with Pool(processes=config.parallelism, initializer=worker_init, initargs=(config,)) as pool:
        for index, record in pool.imap_unordered(worker_do, enumerate(work)):
            pending[index] = record
            while next_index in pending:
                yield work[next_index], pending.pop(next_index)
                next_index += 1


def load_records(path: str) -> List[ZassenhausReport]:
    """Every record of an output file, in file order.

    Raises:
        CorruptCache: at the first line that does not parse.
    """
    records = []
    if not os.path.exists(path):
        return records
    with open(path, "r") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.endswith("\n"):
                raise CorruptCache(path, line_number)
            try:
                records.append(ZassenhausReport.from_json(line))
            except (ValueError, KeyError, TypeError):
                raise CorruptCache(path, line_number)
    return records


def _append(f, record: ZassenhausReport):
    f.write(record.to_json() + "\n")
    f.flush()


def scan(config: ScanConfig, worker: Optional[FieldWorker] = None) -> Iterator[ZassenhausReport]:
    """Writes a fresh output file and yields each record as it is written."""
    config.validate()
    work = list(fundamental_discriminants(config.disc_min, config.disc_max))
    logger.info(f"scanning {len(work)} fundamental discriminants in [{config.disc_min}, {config.disc_max}] for p={config.p}")
    with open(config.output_path, "w") as f:
        for D, record in _ordered(config, work, worker):
            if record is not None:
                _append(f, record)
                yield record
    logger.info(f"scan complete: {config.output_path}")


def resume(config: ScanConfig, worker: Optional[FieldWorker] = None) -> Iterator[ZassenhausReport]:
    """Continues a scan from its output file, yielding only newly computed records.

    Discriminants up to the last recorded one are done unless their record
    timed out under a smaller limit. When nothing needs redoing in the middle
    the file is appended to; otherwise it is rebuilt in a temporary file and
    swapped in at the end.

    Raises:
        CorruptCache: when the existing output does not parse.
    """
    config.validate()
    existing = load_records(config.output_path)
    if any(r.p != config.p for r in existing):
        raise ConfigError(f"{config.output_path} holds records for another prime")
    by_D = {r.D: r for r in existing}
    order = list(fundamental_discriminants(config.disc_min, config.disc_max))
    position = {D: i for i, D in enumerate(order)}
    done_through = max((position[r.D] for r in existing if r.D in position), default=-1)
    redo = [r.D for r in existing if r.D in position and not r.is_terminal(config.per_entry_time_limit_seconds)]
    tail = order[done_through + 1:]
    logger.info(f"resuming {config.output_path}: {len(existing)} records, {len(redo)} to redo, {len(tail)} discriminants left")

    if not redo:
        with open(config.output_path, "a") as f:
            for D, record in _ordered(config, tail, worker):
                if record is not None:
                    _append(f, record)
                    yield record
        return

    work = sorted(redo + tail, key=position.get)
    computed = _ordered(config, work, worker)
    temporary = config.output_path + ".partial"
    with open(temporary, "w") as f:
        for D in order:
            if D in by_D and by_D[D].is_terminal(config.per_entry_time_limit_seconds):
                _append(f, by_D[D])
                continue
            if position[D] <= done_through and D not in by_D:
                continue
            computed_D, record = next(computed)
            assert computed_D == D
            if record is not None:
                _append(f, record)
                yield record
    os.replace(temporary, config.output_path)


def replay_record(record: ZassenhausReport, G: Optional[ClassGroupQF] = None) -> Classification:
    """Recomputes the matrix from the stored certificates and classifies it again.

    Raises:
        WitnessEquationFailed: when a stored certificate does not replay.
        ValueError: when the record has no complete matrix.
    """
    if record.status is not Status.COMPLETE or len(record.certificates) != 4:
        raise ValueError(f"D={record.D}: no complete Zassenhaus matrix to replay")
    G = G or class_group(record.D)
    values = [replay_certificate(MasseyCertificate.from_dict(c), G) for c in record.certificates]
    entries = ((values[0], values[1]), (values[2], values[3]))
    if entries != tuple(tuple(r) for r in record.zm_entries):
        logger.warning(f"D={record.D}: replayed matrix {entries} differs from stored {record.zm_entries}")
    return classify_invariants(record.p, record.invariant_factors, entries)


def has_errors(records: List[ZassenhausReport]) -> bool:
    return any(r.status in (Status.ERROR, Status.TIMEOUT) for r in records)
