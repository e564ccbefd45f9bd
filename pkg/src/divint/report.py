"""Deterministic report documents and serialization.

Every run with the same inputs must emit byte-identical output, whatever the
thread count: keys are sorted, arrays are canonically ordered upstream, and
nothing time- or schedule-dependent enters the payload.  Elapsed time is a
stderr concern, not part of any document.
"""

from __future__ import annotations

import csv
import io

from ._version import __version__
from .families import DivisorFamily
from .lattice import Divisor, Signature, display_value, format_divisor


def document(command: str, parameters: dict, results: dict) -> dict:
    """Standard report envelope; content must already be deterministic."""
    return {
        "command": command,
        "parameters": parameters,
        "results": results,
        "tool_version": __version__,
    }


def json_dumps(doc) -> str:
    import json

    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def csv_dumps(rows: list[dict], fieldnames: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k) for k in fieldnames})
    return buf.getvalue()


def divisor_obj(d: Divisor, primes=None) -> dict:
    """JSON shape of one divisor; `value` only under a concrete prime labeling."""
    obj = {"exponents": list(d), "symbol": format_divisor(d)}
    if primes is not None:
        obj["value"] = display_value(d, primes)
    return obj


def family_obj(fam: DivisorFamily, primes=None) -> dict:
    return {
        "size": len(fam),
        "members": [divisor_obj(d, primes) for d in fam.members],
    }


def signature_obj(sig: Signature) -> dict:
    return {
        "exponents": list(sig.alphas),
        "n": sig.n,
        "normalized_from": list(sig.original) if sig.was_normalized else None,
    }
