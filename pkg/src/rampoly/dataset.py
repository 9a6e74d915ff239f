"""Result documents, the on-disk cache, and the shipped expected-values file.

Big integers are always written as decimal strings.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .construct import ClassPolynomialResult
from .factor import FactoredInteger
from .polyz import IntPolynomial

SCHEMA_VERSION = 1


def factored_to_json(fi: FactoredInteger) -> dict:
    return {
        "sign": fi.sign,
        "factors": [[str(p), str(e)] for p, e in fi.factors],
        "cofactor": str(fi.cofactor),
    }


def factored_from_json(d: dict) -> FactoredInteger:
    return FactoredInteger(
        sign=int(d["sign"]),
        factors=tuple((int(p), int(e)) for p, e in d["factors"]),
        cofactor=int(d.get("cofactor", "1")),
    )


@dataclass
class ResultDocument:
    n: int
    kind: str
    degree: int
    coefficients: list[str]
    discriminant: dict
    invariant_factors: list[int]
    bits: int
    flags: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @property
    def polynomial(self) -> IntPolynomial:
        return IntPolynomial(int(c) for c in self.coefficients)

    @classmethod
    def from_result(cls, result: ClassPolynomialResult, disc: FactoredInteger, invariant_factors) -> "ResultDocument":
        return cls(
            n=result.n,
            kind=result.kind,
            degree=result.polynomial.degree,
            coefficients=[str(c) for c in result.polynomial.coeffs],
            discriminant=factored_to_json(disc),
            invariant_factors=[int(d) for d in invariant_factors],
            bits=result.bits,
            flags={"verified": bool(result.verified)},
        )

    def to_json(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "n": self.n,
            "kind": self.kind,
            "degree": self.degree,
            "coefficients": list(self.coefficients),
            "discriminant": self.discriminant,
            "invariant_factors": list(self.invariant_factors),
            "bits": self.bits,
            "flags": dict(self.flags),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, d: dict) -> "ResultDocument":
        version = int(d.get("schema_version", SCHEMA_VERSION))
        if version > SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {version}")
        return cls(
            n=int(d["n"]),
            kind=d["kind"],
            degree=int(d["degree"]),
            coefficients=[str(c) for c in d["coefficients"]],
            discriminant=d["discriminant"],
            invariant_factors=[int(x) for x in d["invariant_factors"]],
            bits=int(d["bits"]),
            flags=dict(d.get("flags", {})),
            schema_version=version,
        )

    @classmethod
    def loads(cls, text: str) -> "ResultDocument":
        return cls.from_json(json.loads(text))


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class ResultCache:
    """One ``<kind>_<n>.json`` document per computed polynomial."""

    def __init__(self, directory):
        self.directory = Path(directory)

    def path(self, kind: str, n: int) -> Path:
        return self.directory / f"{kind}_{n}.json"

    def get(self, kind: str, n: int) -> ResultDocument | None:
        p = self.path(kind, n)
        if not p.exists():
            return None
        return ResultDocument.loads(p.read_text(encoding="utf-8"))

    def put(self, doc: ResultDocument) -> Path:
        p = self.path(doc.kind, doc.n)
        atomic_write_text(p, doc.dumps())
        return p


def load_expected(path=None) -> dict:
    """The expected-values dataset; the packaged copy unless ``path`` is given."""
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    text = resources.files("rampoly").joinpath("data/expected.json").read_text(encoding="utf-8")
    return json.loads(text)


def table2_row(expected: dict, n: int) -> dict | None:
    for row in expected.get("table2", []):
        if int(row["n"]) == n:
            return row
    return None


def table1_polynomials(expected: dict) -> dict[int, IntPolynomial]:
    return {int(d["n"]): IntPolynomial(int(c) for c in d["coefficients"]) for d in expected["table1"]}
