"""Built-in corpus of presentations and the corpus self-test runner.

Every entry is a presentation file next to this module; ``manifest.json``
records the profile values each entry must reproduce.  An ``expected``
case tag of ``PRECONDITION`` means the pipeline must refuse the group.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from ..construction import construct_noninner
from ..errors import GroupError, PreconditionViolated
from ..oracle import enumerate_automorphisms, oracle_report
from ..pc import PcPresentation, load_presentation, to_cayley
from ..structure import profile
from ..table import GroupTable

HERE = Path(__file__).parent
ORACLE_MAX_ORDER = 64
PRECONDITION = "PRECONDITION"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: str
    description: str = ""
    expected: dict = field(default_factory=dict)

    @property
    def path(self) -> Path:
        p = Path(self.source)
        return p if p.is_absolute() else HERE / p

    def presentation(self) -> PcPresentation:
        return _load(str(self.path))

    def group(self) -> GroupTable:
        return to_cayley(self.presentation())[0]


@lru_cache(maxsize=None)
def _load(path):
    return load_presentation(path)


@lru_cache(maxsize=1)
def entries() -> tuple[CorpusEntry, ...]:
    data = json.loads((HERE / "manifest.json").read_text())
    return tuple(CorpusEntry(**e) for e in data["entries"])


def get(name: str) -> CorpusEntry:
    for e in entries():
        if e.name == name:
            return e
    raise KeyError(f"no corpus entry named {name!r}")


def names() -> list[str]:
    return [e.name for e in entries()]


def profile_mismatches(entry: CorpusEntry, prof, case_tag) -> list[str]:
    got = {
        "prime": prof.prime,
        "order": prof.order,
        "nilpotency_class": prof.nilpotency_class,
        "n": prof.n,
        "ds_condition": prof.ds_condition,
        "case_tag": case_tag,
    }
    return [f"{k}: expected {v!r}, got {got[k]!r}"
            for k, v in entry.expected.items() if k in got and got[k] != v]


def run_entry(entry: CorpusEntry, oracle_max_order: int = ORACLE_MAX_ORDER) -> dict:
    """Pipeline plus oracle verification for one entry, as a JSON-ready row."""
    row = {"name": entry.name, "order": None, "prime": None, "case_tag": None,
           "fixed_set": None, "verified": None, "witnesses": None, "anomalies": [], "oracle": None,
           "mismatches": [], "error": None, "pass": False}
    try:
        G = entry.group()
        prof = profile(G)
    except GroupError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row["order"], row["prime"] = G.order, prof.prime
    cert = None
    try:
        cert = construct_noninner(G, prof.prime)
        case_tag = cert.case_tag
    except PreconditionViolated as exc:
        case_tag = PRECONDITION
        row["error"] = f"PreconditionViolated: {exc}"
    except GroupError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row["case_tag"] = case_tag
    row["mismatches"] = profile_mismatches(entry, prof, case_tag)
    ok = not row["mismatches"]
    if cert is not None:
        row["fixed_set"] = cert.fixed_set
        row["verified"] = cert.to_json()["verified"]
        row["anomalies"] = list(cert.anomalies)
        row["witnesses"] = cert.to_json()["witnesses"]
        ok = ok and cert.accepted and not cert.anomalies
        if G.order <= oracle_max_order:
            enum = enumerate_automorphisms(G, p=prof.prime)
            rep = oracle_report(entry.name, G, prof.prime, enum)
            rep["pipeline_member"] = cert.automorphism in enum
            rep.pop("least_witness_perm")
            row["oracle"] = rep
            ok = ok and rep["complete"] and rep["witness_count"] > 0 and rep["pipeline_member"]
    else:
        ok = ok and case_tag == PRECONDITION
    row["pass"] = bool(ok)
    return row


def run_corpus(selected=None, oracle_max_order: int = ORACLE_MAX_ORDER) -> list[dict]:
    chosen = entries() if selected is None else [get(n) for n in selected]
    return [run_entry(e, oracle_max_order) for e in chosen]
