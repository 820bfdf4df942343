"""Verification reports and their JSON form."""
import json
from dataclasses import asdict, dataclass, field

PASS = "pass"
COUNTEREXAMPLE = "counterexample"
NEVER = "hypothesis-never-satisfied"
STATUSES = (PASS, COUNTEREXAMPLE, NEVER)

THEOREM = "theorem"
DISCREPANCY = "discrepancy"
SCAN = "scan"
KINDS = (THEOREM, DISCREPANCY, SCAN)


def jsonable(x):
    """Tuples to lists, numpy scalars to ints, sets to sorted lists."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=lambda v: json.dumps(v, sort_keys=True))
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


@dataclass
class VerificationReport:
    suite: str
    kind: str
    status: str
    instances_checked: int
    hypothesis_satisfied: int
    counterexamples: int = 0
    witness: dict = None
    assumptions: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    reproduced: bool = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.kind not in KINDS:
            raise ValueError(f"bad kind {self.kind!r}")
        if (self.witness is not None) != (self.status == COUNTEREXAMPLE):
            raise ValueError("a witness is present exactly when the status is counterexample")

    def to_dict(self):
        return jsonable(asdict(self))

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def to_json(self):
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @property
    def failed(self):
        """Whether this report should make the run exit nonzero."""
        if self.kind == DISCREPANCY:
            return not self.reproduced
        if self.kind == SCAN:
            return False
        return self.status == COUNTEREXAMPLE


def dumps(obj):
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def bundle(reports, corpus=None):
    return {
        "corpus": corpus,
        "reports": [r.to_dict() for r in reports],
        "summary": {
            "suites": len(reports),
            "failed": sorted(r.suite for r in reports if r.failed),
        },
    }


def load_bundle(text):
    data = json.loads(text)
    return [VerificationReport.from_dict(r) for r in data["reports"]]
