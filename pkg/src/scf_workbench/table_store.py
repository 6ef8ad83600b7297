"""
Reading and writing table files and proof trace files.

Table files are line oriented text:
    gssc 1
    m=<m> n=<n>
    <winner of profile 0>
    <winner of profile 1>
    ...
Trace files are JSON documents with sorted keys, one record per step, each
carrying the full per-voter order indices of its profile.
"""
import json
from pathlib import Path
from typing import Any

from scf_workbench import config
from scf_workbench.config import logger
from scf_workbench.errors import TableFormatError
from scf_workbench.prefcore import ScfTable, check_size, profile_order_indices
from scf_workbench.services.lemma_engine import Justification, LemmaTag, ProofTrace, TraceStep


def format_table(f: ScfTable) -> str:
    lines = [f"{config.TABLE_FORMAT_TAG} {config.TABLE_FORMAT_VERSION}", f"m={f.m} n={f.n}"]
    lines.extend(str(int(w)) for w in f.table)
    return "\n".join(lines) + "\n"


def _is_ascii_number(text: str) -> bool:
    return text.isascii() and text.isdigit()


def _parse_dimension(token: str, name: str, line: int, offset: int) -> int:
    key, sep, value = token.partition("=")
    if key != name or not sep:
        raise TableFormatError(f"Expected '{name}=<int>', got {token!r}", line, offset)
    if not _is_ascii_number(value):
        raise TableFormatError(f"Dimension {name} is not a non-negative integer: {value!r}", line, offset + len(key) + 1)
    return int(value)


def parse_table(text: str) -> ScfTable:
    """
    Parse table file contents.
    Raises:
        TableFormatError: On a bad header, a non-integer or out-of-range entry,
            or an entry count other than (m!)^n.
    """
    lines = text.splitlines()
    if not lines:
        raise TableFormatError("Empty table file", 1, 0)

    header = lines[0].split()
    expected = [config.TABLE_FORMAT_TAG, str(config.TABLE_FORMAT_VERSION)]
    if header != expected:
        raise TableFormatError(f"Expected header {' '.join(expected)!r}, got {lines[0]!r}", 1, 0)

    if len(lines) < 2:
        raise TableFormatError("Missing dimension line", 2, 0)
    dims = lines[1].split()
    if len(dims) != 2:
        raise TableFormatError(f"Expected 'm=<m> n=<n>', got {lines[1]!r}", 2, 0)
    m = _parse_dimension(dims[0], "m", 2, 0)
    n = _parse_dimension(dims[1], "n", 2, lines[1].index(dims[1]))
    try:
        size = check_size(m, n)
    except ValueError as e:
        raise TableFormatError(str(e), 2, 0) from e

    body = lines[2:]
    while body and body[-1].strip() == "":
        body.pop()
    values = []
    for position, raw in enumerate(body):
        line = position + 3
        entry = raw.strip()
        offset = raw.index(entry) if entry else 0
        if not _is_ascii_number(entry):
            raise TableFormatError(f"Entry {entry!r} is not an alternative id", line, offset)
        value = int(entry)
        if value >= m:
            raise TableFormatError(f"Entry {value} is not an alternative below m={m}", line, offset)
        values.append(value)
    if len(values) != size:
        raise TableFormatError(f"Expected {size} entries for m={m} n={n}, got {len(values)}", len(body) + 3, 0)
    return ScfTable(m, n, values)


def write_table(path: str | Path, f: ScfTable) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_table(f), encoding="utf-8")
    logger.debug(f"Table m={f.m} n={f.n} written to {path}")
    return path


def read_table(path: str | Path) -> ScfTable:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise TableFormatError(f"Table file {path} is not UTF-8 text", None, e.start) from e
    table = parse_table(text)
    logger.info(f"Loaded table m={table.m} n={table.n} from {path}")
    return table


def _step_record(step: TraceStep, m: int, n: int) -> dict[str, Any]:
    return {
        "profile_index": step.profile_index,
        "orders": list(profile_order_indices(step.profile_index, m, n)),
        "outcome": step.outcome,
        "justification": step.justification.value,
        "changed_voter": step.changed_voter,
        "note": step.note,
        "claimed": sorted(step.claimed) if step.claimed is not None else None,
    }


def format_trace(trace: ProofTrace) -> str:
    document = {
        "format": config.TRACE_FORMAT_TAG,
        "version": config.TRACE_FORMAT_VERSION,
        "m": trace.m,
        "n": trace.n,
        "lemma": trace.lemma.value,
        "params": trace.params,
        "conclusion": trace.conclusion,
        "steps": [_step_record(step, trace.m, trace.n) for step in trace.steps],
    }
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(record: dict, key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if key not in record:
        raise TableFormatError(f"{where}: missing field {key!r}")
    value = record[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise TableFormatError(f"{where}: field {key!r} has the wrong type ({type(value).__name__})")
    return value


def _parse_step(record: Any, position: int, m: int, n: int) -> TraceStep:
    where = f"step {position}"
    if not isinstance(record, dict):
        raise TableFormatError(f"{where}: expected an object")
    profile = _require(record, "profile_index", int, where)
    orders = _require(record, "orders", list, where)
    if len(orders) != n:
        raise TableFormatError(f"{where}: {len(orders)} order indices for n={n}")
    if 0 <= profile < check_size(m, n) and list(profile_order_indices(profile, m, n)) != orders:
        raise TableFormatError(f"{where}: order indices {orders} do not match profile {profile}")
    try:
        justification = Justification(_require(record, "justification", str, where))
    except ValueError as e:
        raise TableFormatError(f"{where}: unknown justification {record['justification']!r}") from e
    changed = record.get("changed_voter")
    if changed is not None and (not isinstance(changed, int) or isinstance(changed, bool)):
        raise TableFormatError(f"{where}: changed_voter must be an integer or null")
    claimed = record.get("claimed")
    if claimed is not None and not (
            isinstance(claimed, list) and all(isinstance(a, int) and not isinstance(a, bool) for a in claimed)):
        raise TableFormatError(f"{where}: claimed must be a list of alternatives or null")
    return TraceStep(
        profile_index=profile,
        outcome=_require(record, "outcome", int, where),
        justification=justification,
        changed_voter=changed,
        note=record.get("note", ""),
        claimed=frozenset(claimed) if claimed is not None else None,
    )


def parse_trace(text: str) -> ProofTrace:
    """
    Parse trace file contents.
    Raises:
        TableFormatError: On invalid JSON (with its line and column) or a bad document shape.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise TableFormatError(f"Trace is not valid JSON: {e.msg}", e.lineno, e.colno - 1) from e
    if not isinstance(document, dict):
        raise TableFormatError("Trace document must be an object")
    if document.get("format") != config.TRACE_FORMAT_TAG or document.get("version") != config.TRACE_FORMAT_VERSION:
        raise TableFormatError(
            f"Expected format {config.TRACE_FORMAT_TAG!r} version {config.TRACE_FORMAT_VERSION}, "
            f"got {document.get('format')!r} version {document.get('version')!r}")
    m = _require(document, "m", int, "trace")
    n = _require(document, "n", int, "trace")
    try:
        check_size(m, n)
        lemma = LemmaTag(_require(document, "lemma", str, "trace"))
    except ValueError as e:
        if isinstance(e, TableFormatError):
            raise
        raise TableFormatError(f"trace: {e}") from e
    steps = _require(document, "steps", list, "trace")
    if not steps:
        raise TableFormatError("trace: no steps")
    return ProofTrace(
        m=m,
        n=n,
        steps=tuple(_parse_step(record, position, m, n) for position, record in enumerate(steps)),
        conclusion=_require(document, "conclusion", str, "trace"),
        lemma=lemma,
        params=_require(document, "params", dict, "trace"),
    )


def write_trace(path: str | Path, trace: ProofTrace) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_trace(trace), encoding="utf-8")
    logger.info(f"Trace with {len(trace)} steps written to {path}")
    return path


def read_trace(path: str | Path) -> ProofTrace:
    path = Path(path)
    trace = parse_trace(path.read_text(encoding="utf-8"))
    logger.info(f"Loaded {trace.lemma.value} trace with {len(trace)} steps from {path}")
    return trace
