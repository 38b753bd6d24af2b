"""Serialization for run artifacts.

One directory per run: manifest.json plus scenario CSV/JSON files. CSV
cells carry 17 significant digits so that regression diffs are exact;
JSON is UTF-8 with sorted keys for byte-stable output.
"""

import json
from pathlib import Path

import numpy as np

from .errors import DomainError, SchemaMismatch

# wall time varies run to run by design; comparisons must skip it
VOLATILE_KEYS = frozenset({"wall_time_s"})


def format_cell(x):
    return "%.16e" % float(x)


def write_csv(path, header, columns):
    columns = [np.atleast_1d(np.asarray(c, dtype=float)) for c in columns]
    if len(header) != len(columns):
        raise DomainError("header and column count mismatch")
    if columns and any(len(c) != len(columns[0]) for c in columns):
        raise DomainError("ragged columns")
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(format_cell(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_csv(path):
    text = Path(path).read_text(encoding="utf-8").strip()
    lines = text.split("\n")
    header = lines[0].split(",")
    if len(lines) == 1:
        return header, np.empty((0, len(header)))
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    if data.shape[1] != len(header):
        raise SchemaMismatch(f"{path}: row width does not match header")
    return header, data


def trajectory_header(k):
    return ["t"] + [f"rho_{j}" for j in range(1, k + 1)]


def write_trajectory_csv(path, times, radii):
    radii = np.atleast_2d(np.asarray(radii, dtype=float))
    cols = [times] + [radii[:, j] for j in range(radii.shape[1])]
    write_csv(path, trajectory_header(radii.shape[1]), cols)


def read_trajectory_csv(path):
    header, data = read_csv(path)
    if header[0] != "t" or any(not h.startswith("rho_") for h in header[1:]):
        raise SchemaMismatch(f"{path}: not a trajectory file (header {header})")
    return data[:, 0], data[:, 1:]


def write_snapshot_csv(path, r, u):
    write_csv(path, ["r", "u"], [r, u])


def read_snapshot_csv(path):
    header, data = read_csv(path)
    if header != ["r", "u"]:
        raise SchemaMismatch(f"{path}: not a snapshot file (header {header})")
    return data[:, 0], data[:, 1]


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def write_json(path, payload):
    text = json.dumps(_jsonify(payload), sort_keys=True, indent=2, ensure_ascii=False)
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def diff_payloads(a, b, tol, path=""):
    """Recursive field-wise diff of two JSON payloads.

    Returns (schema, numeric) difference lists; entries are
    (field_path, detail) pairs. Keys in VOLATILE_KEYS are skipped.
    """
    schema = []
    numeric = []
    if isinstance(a, dict) and isinstance(b, dict):
        keys_a = set(a) - VOLATILE_KEYS
        keys_b = set(b) - VOLATILE_KEYS
        for k in sorted(keys_a ^ keys_b):
            side = "first" if k in keys_a else "second"
            schema.append((f"{path}.{k}".lstrip("."), f"only in {side} report"))
        for k in sorted(keys_a & keys_b):
            s, n = diff_payloads(a[k], b[k], tol, f"{path}.{k}".lstrip("."))
            schema += s
            numeric += n
        return schema, numeric
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            schema.append((path, f"length {len(a)} vs {len(b)}"))
            return schema, numeric
        for i, (x, y) in enumerate(zip(a, b)):
            s, n = diff_payloads(x, y, tol, f"{path}[{i}]")
            schema += s
            numeric += n
        return schema, numeric
    num_a = isinstance(a, (int, float)) and not isinstance(a, bool)
    num_b = isinstance(b, (int, float)) and not isinstance(b, bool)
    if num_a and num_b:
        if not np.isclose(a, b, rtol=tol, atol=tol, equal_nan=True):
            numeric.append((path, f"{a!r} vs {b!r}"))
        return schema, numeric
    if type(a) is not type(b):
        schema.append((path, f"type {type(a).__name__} vs {type(b).__name__}"))
    elif a != b:
        numeric.append((path, f"{a!r} vs {b!r}"))
    return schema, numeric


def diff_csv_files(path_a, path_b, tol):
    header_a, data_a = read_csv(path_a)
    header_b, data_b = read_csv(path_b)
    name = Path(path_a).name
    if header_a != header_b:
        return [(name, f"headers differ: {header_a} vs {header_b}")], []
    if data_a.shape != data_b.shape:
        return [(name, f"shape {data_a.shape} vs {data_b.shape}")], []
    bad = ~np.isclose(data_a, data_b, rtol=tol, atol=tol, equal_nan=True)
    numeric = []
    for i, j in zip(*np.nonzero(bad)):
        numeric.append(
            (
                f"{name}:{header_a[j]} row {i}",
                f"{data_a[i, j]!r} vs {data_b[i, j]!r}",
            )
        )
        if len(numeric) >= 20:
            numeric.append((name, "... further rows differ"))
            break
    return [], numeric


def diff_run_dirs(dir_a, dir_b, tol):
    """Compare two run directories file by file."""
    dir_a, dir_b = Path(dir_a), Path(dir_b)
    names_a = {p.name for p in dir_a.iterdir() if p.suffix in (".json", ".csv")}
    names_b = {p.name for p in dir_b.iterdir() if p.suffix in (".json", ".csv")}
    schema = []
    numeric = []
    for name in sorted(names_a ^ names_b):
        side = "first" if name in names_a else "second"
        schema.append((name, f"only in {side} run"))
    for name in sorted(names_a & names_b):
        if name.endswith(".json"):
            s, n = diff_payloads(
                read_json(dir_a / name), read_json(dir_b / name), tol, name
            )
        else:
            s, n = diff_csv_files(dir_a / name, dir_b / name, tol)
        schema += s
        numeric += n
    return schema, numeric
