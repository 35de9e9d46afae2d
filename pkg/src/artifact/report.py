"""Check records, reports and deterministic seeding."""
import hashlib
import random

SCHEMA_VERSION = "1"


class Check:
    __slots__ = ("suite", "check_id", "anchor", "status", "witness", "detail")

    def __init__(self, suite, check_id, anchor, status, witness=None, detail=None):
        if status not in ("pass", "fail", "skipped"):
            raise ValueError(f"bad status {status!r}")
        if status == "fail" and witness is None:
            raise ValueError("failing checks must carry a witness")
        self.suite = suite
        self.check_id = check_id
        self.anchor = anchor
        self.status = status
        self.witness = witness
        self.detail = detail

    def to_dict(self):
        out = {
            "suite": self.suite,
            "check_id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
        }
        if self.detail is not None:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class Report:
    def __init__(self, checks=None, meta=None):
        self.checks = list(checks or [])
        self.meta = dict(meta or {})

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, other):
        self.checks.extend(other.checks)

    def record(self, suite, check_id, anchor, ok, witness=None, detail=None):
        status = "pass" if ok else "fail"
        if not ok and witness is None:
            witness = {"note": "no witness captured"}
        return self.add(Check(suite, check_id, anchor, status, witness if not ok else None, detail))

    @property
    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "meta": self.meta,
            "summary": self.summary(),
            "checks": [c.to_dict() for c in self.checks],
        }


def rng_for(seed, *labels):
    """Deterministic random.Random derived from a 64-bit seed and labels."""
    h = hashlib.sha256(repr((int(seed) & 0xFFFFFFFFFFFFFFFF,) + labels).encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))
