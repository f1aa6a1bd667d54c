"""Reading and writing model and scenario files.

Model files are JSON documents with schema_version "1".  Parsing is two
staged: a structural pass (shape and field types, diagnostics E-SYNTAX
and E-SCHEMA, unknown fields tolerated as W-UNKNOWN-FIELD warnings)
followed by the model-core semantic validation.  ``parse_model`` raises
unless both stages produce zero errors, so a returned Model is always
fully valid.

Emission is canonical: fixed key order, all sections present, ids in
natural sort order, two-space indentation, trailing newline.  Parsing
what emit produced returns an equal Model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .model import (
    Asset,
    AttackerProfile,
    CriticalAssetMapping,
    EdgeScore,
    Finding,
    GuardSpec,
    Hazard,
    Link,
    Loss,
    Metadata,
    Model,
    Protection,
    Scenario,
    SCHEMA_VERSION,
    ZeroDayLink,
    validate,
)

# ---------------------------------------------------------------------------
# Errors and results
# ---------------------------------------------------------------------------


class ModelParseError(ValueError):
    """Raised when a document cannot be turned into a valid Model.

    Carries the full findings list (errors and warnings)."""

    def __init__(self, findings):
        self.findings = tuple(findings)
        errors = [f for f in self.findings if f.severity == "error"]
        head = errors[0].message if errors else "unknown parse error"
        super().__init__(f"{len(errors)} error(s); first: {head}")


class ScenarioParseError(ModelParseError):
    """Raised when a scenario document is structurally invalid."""


@dataclass(frozen=True)
class ParseResult:
    """Outcome of ``parse_document``: the model (None when structural
    errors prevented construction) plus every finding gathered."""

    model: Model | None
    findings: tuple[Finding, ...]

    @property
    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    @property
    def warnings(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "warning")


def _err(code: str, message: str, subject: str = "") -> Finding:
    return Finding("error", code, message, subject)


def _warn(code: str, message: str, subject: str = "") -> Finding:
    return Finding("warning", code, message, subject)


# ---------------------------------------------------------------------------
# Structural field checking
# ---------------------------------------------------------------------------

_CHECKERS = {
    "string": lambda v: isinstance(v, str),
    "integer": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
    "string list": lambda v: isinstance(v, list)
    and all(isinstance(x, str) for x in v),
    "string map": lambda v: isinstance(v, dict)
    and all(isinstance(k, str) and isinstance(x, str) for k, x in v.items()),
    "object list": lambda v: isinstance(v, list),
}


def _extract(section: str, index: int, entry, table: dict,
             findings: list[Finding]) -> dict | None:
    """Check one section entry against its field table.

    Returns the accepted fields, or None when a required field is
    missing or mistyped.  Unknown fields only warn."""
    where = f"{section}[{index}]"
    if not isinstance(entry, dict):
        findings.append(_err("E-SCHEMA", f"{where} is not an object", where))
        return None
    label = entry.get("id") or entry.get("hazard") or entry.get("link")
    if isinstance(label, str) and label:
        where = f"{section} entry {label!r}"
        subject = label
    else:
        subject = f"{section}[{index}]"
    out: dict = {}
    ok = True
    for name, (kind, required) in table.items():
        if name not in entry or entry[name] is None:
            if required:
                findings.append(_err(
                    "E-SCHEMA", f"{where} is missing field {name!r}", subject
                ))
                ok = False
            continue
        value = entry[name]
        if not _CHECKERS[kind](value):
            findings.append(_err(
                "E-SCHEMA", f"{where} field {name!r} must be a {kind}", subject
            ))
            ok = False
            continue
        out[name] = value
    for name in entry:
        if name not in table:
            findings.append(_warn(
                "W-UNKNOWN-FIELD", f"{where} has unknown field {name!r}", subject
            ))
    return out if ok else None


_LOSS_FIELDS = {
    "id": ("string", True),
    "description": ("string", False),
    "weight": ("integer", False),
}
_HAZARD_FIELDS = {
    "id": ("string", True),
    "description": ("string", False),
    "associated": ("string list", False),
}
_ASSET_FIELDS = {
    "id": ("string", True),
    "name": ("string", False),
    "layer": ("string", False),
    "attributes": ("string map", False),
    "tags": ("string list", False),
}
_LINK_FIELDS = {
    "id": ("string", True),
    "a": ("string", True),
    "b": ("string", True),
    "kind": ("string", False),
    "direction": ("string", False),
    "attributes": ("string map", False),
}
_PROTECTION_FIELDS = {
    "id": ("string", True),
    "name": ("string", False),
    "description": ("string", False),
    "guards": ("object list", False),
}
_GUARD_FIELDS = {
    "asset": ("string", True),
    "via": ("string", False),
}
_PROFILE_FIELDS = {
    "id": ("string", True),
    "name": ("string", False),
    "tier": ("integer", False),
    "entry_assets": ("string list", False),
}
_MAPPING_FIELDS = {
    "hazard": ("string", True),
    "targets": ("string list", True),
}
_SCORE_FIELDS = {
    "link": ("string", True),
    "direction": ("string", False),
    "likelihood": ("number", True),
}
_METADATA_FIELDS = {
    "name": ("string", False),
    "version": ("string", False),
}

_REQUIRED_SECTIONS = (
    "losses", "hazards", "assets", "links", "protections", "profiles",
    "mappings",
)
_ALL_KEYS = _REQUIRED_SECTIONS + ("schema_version", "metadata", "edge_scores")


def _section(doc: dict, name: str, required: bool,
             findings: list[Finding]) -> list:
    if name not in doc:
        if required:
            findings.append(_err(
                "E-SCHEMA", f"missing required section {name!r}", name
            ))
        return []
    value = doc[name]
    if not isinstance(value, list):
        findings.append(_err(
            "E-SCHEMA", f"section {name!r} must be an array", name
        ))
        return []
    return value


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_document(text: str) -> ParseResult:
    """Parse model JSON, collecting every diagnostic.

    The result's model is None when syntax or structure prevented
    construction; otherwise it is a Model whose semantic findings (from
    ``validate``) are merged into the result."""
    findings: list[Finding] = []
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        findings.append(_err(
            "E-SYNTAX",
            f"line {exc.lineno} column {exc.colno}: {exc.msg}",
        ))
        return ParseResult(None, tuple(findings))
    if not isinstance(doc, dict):
        findings.append(_err("E-SCHEMA", "top-level value must be an object"))
        return ParseResult(None, tuple(findings))

    version = doc.get("schema_version")
    if version is None:
        findings.append(_err(
            "E-SCHEMA", "missing required field 'schema_version'",
            "schema_version",
        ))
    elif version != SCHEMA_VERSION:
        findings.append(_err(
            "E-SCHEMA",
            f"unsupported schema_version {version!r} "
            f"(expected {SCHEMA_VERSION!r})",
            "schema_version",
        ))
    for key in doc:
        if key not in _ALL_KEYS:
            findings.append(_warn(
                "W-UNKNOWN-FIELD", f"unknown top-level section {key!r}", key
            ))

    losses = [
        Loss(f["id"], f.get("description", ""), f.get("weight"))
        for i, raw in enumerate(_section(doc, "losses", True, findings))
        if (f := _extract("losses", i, raw, _LOSS_FIELDS, findings))
    ]
    hazards = [
        Hazard(f["id"], f.get("description", ""), tuple(f.get("associated", ())))
        for i, raw in enumerate(_section(doc, "hazards", True, findings))
        if (f := _extract("hazards", i, raw, _HAZARD_FIELDS, findings))
    ]
    assets = [
        Asset(
            f["id"], f.get("name", ""), f.get("layer", "software"),
            dict(f.get("attributes", {})), tuple(f.get("tags", ())),
        )
        for i, raw in enumerate(_section(doc, "assets", True, findings))
        if (f := _extract("assets", i, raw, _ASSET_FIELDS, findings))
    ]
    links = [
        Link(
            f["id"], f["a"], f["b"], f.get("kind", "direct"),
            f.get("direction", "bidirectional"), dict(f.get("attributes", {})),
        )
        for i, raw in enumerate(_section(doc, "links", True, findings))
        if (f := _extract("links", i, raw, _LINK_FIELDS, findings))
    ]

    protections = []
    for i, raw in enumerate(_section(doc, "protections", True, findings)):
        f = _extract("protections", i, raw, _PROTECTION_FIELDS, findings)
        if not f:
            continue
        guards = []
        broken = False
        for j, guard_raw in enumerate(f.get("guards", ())):
            g = _extract(
                f"protections[{i}].guards", j, guard_raw, _GUARD_FIELDS,
                findings,
            )
            if g is None:
                broken = True
            else:
                guards.append(GuardSpec(g["asset"], g.get("via")))
        if not broken:
            protections.append(Protection(
                f["id"], f.get("name", ""), f.get("description", ""),
                tuple(guards),
            ))

    profiles = [
        AttackerProfile(
            f["id"], f.get("name", ""), f.get("tier", 0),
            tuple(f.get("entry_assets", ())),
        )
        for i, raw in enumerate(_section(doc, "profiles", True, findings))
        if (f := _extract("profiles", i, raw, _PROFILE_FIELDS, findings))
    ]
    mappings = [
        CriticalAssetMapping(f["hazard"], tuple(f["targets"]))
        for i, raw in enumerate(_section(doc, "mappings", True, findings))
        if (f := _extract("mappings", i, raw, _MAPPING_FIELDS, findings))
    ]
    edge_scores = [
        EdgeScore(f["link"], f.get("direction", "a-to-b"), float(f["likelihood"]))
        for i, raw in enumerate(_section(doc, "edge_scores", False, findings))
        if (f := _extract("edge_scores", i, raw, _SCORE_FIELDS, findings))
    ]

    metadata = Metadata()
    if "metadata" in doc:
        if not isinstance(doc["metadata"], dict):
            findings.append(_err(
                "E-SCHEMA", "section 'metadata' must be an object", "metadata"
            ))
        else:
            f = _extract("metadata", 0, doc["metadata"], _METADATA_FIELDS,
                         findings)
            if f is not None:
                metadata = Metadata(f.get("name", ""), f.get("version", ""))

    if any(f.severity == "error" for f in findings):
        return ParseResult(None, tuple(findings))

    model = Model(
        losses=tuple(losses),
        hazards=tuple(hazards),
        assets=tuple(assets),
        links=tuple(links),
        protections=tuple(protections),
        profiles=tuple(profiles),
        mappings=tuple(mappings),
        edge_scores=tuple(edge_scores),
        metadata=metadata,
    )
    findings.extend(validate(model).findings)
    if any(f.severity == "error" for f in findings):
        return ParseResult(None, tuple(findings))
    return ParseResult(model, tuple(findings))


def parse_model(text: str) -> Model:
    """Parse model JSON; raises ModelParseError unless the document is
    structurally and semantically valid."""
    result = parse_document(text)
    if result.model is None:
        raise ModelParseError(result.findings)
    return result.model


def load_model_file(path: str | Path) -> Model:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def bundled_model_path() -> Path:
    """Filesystem path of the example model shipped with the package."""
    return Path(str(resources.files("posturekit").joinpath("data/sphere.json")))


def load_bundled_model() -> Model:
    return parse_model(bundled_model_path().read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# Scenario parsing
# ---------------------------------------------------------------------------

_SCENARIO_FIELDS = {
    "profile": ("string", False),
    "compromised": ("string list", False),
    "disabled_protections": ("string list", False),
    "zero_day_links": ("object list", False),
    "score_overrides": ("object list", False),
}
_ZERO_DAY_FIELDS = {
    "a": ("string", True),
    "b": ("string", True),
    "direction": ("string", False),
}


def parse_scenario_obj(doc) -> tuple[Scenario | None, tuple[Finding, ...]]:
    """Structural check of an already-decoded scenario object."""
    findings: list[Finding] = []
    if not isinstance(doc, dict):
        findings.append(_err("E-SCHEMA", "scenario must be an object"))
        return None, tuple(findings)
    f = _extract("scenario", 0, doc, _SCENARIO_FIELDS, findings)
    if f is None:
        return None, tuple(findings)
    zero_days = []
    for j, raw in enumerate(f.get("zero_day_links", ())):
        z = _extract("zero_day_links", j, raw, _ZERO_DAY_FIELDS, findings)
        if z is None:
            continue
        direction = z.get("direction", "a-to-b")
        if direction not in ("a-to-b", "bidirectional"):
            findings.append(_err(
                "E-BAD-DIRECTION",
                f"zero_day_links[{j}] direction {direction!r} must be "
                f"'a-to-b' or 'bidirectional'",
                f"zero_day_links[{j}]",
            ))
            continue
        zero_days.append(ZeroDayLink(z["a"], z["b"], direction))
    overrides = []
    for j, raw in enumerate(f.get("score_overrides", ())):
        s = _extract("score_overrides", j, raw, _SCORE_FIELDS, findings)
        if s is None:
            continue
        direction = s.get("direction", "a-to-b")
        likelihood = float(s["likelihood"])
        if direction not in ("a-to-b", "b-to-a"):
            findings.append(_err(
                "E-BAD-DIRECTION",
                f"score_overrides[{j}] direction {direction!r} must be "
                f"'a-to-b' or 'b-to-a'",
                f"score_overrides[{j}]",
            ))
            continue
        if not 0 < likelihood <= 1:
            findings.append(_err(
                "E-BAD-LIKELIHOOD",
                f"score_overrides[{j}] likelihood {likelihood} outside (0, 1]",
                f"score_overrides[{j}]",
            ))
            continue
        overrides.append(EdgeScore(s["link"], direction, likelihood))
    if any(x.severity == "error" for x in findings):
        return None, tuple(findings)
    scenario = Scenario(
        profile=f.get("profile"),
        compromised=tuple(f.get("compromised", ())),
        disabled_protections=tuple(f.get("disabled_protections", ())),
        zero_day_links=tuple(zero_days),
        score_overrides=tuple(overrides),
    )
    return scenario, tuple(findings)


def parse_scenario(text: str) -> Scenario:
    """Parse scenario JSON text; raises ScenarioParseError on any
    structural error."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError((
            _err("E-SYNTAX", f"line {exc.lineno} column {exc.colno}: {exc.msg}"),
        ))
    scenario, findings = parse_scenario_obj(doc)
    if scenario is None:
        raise ScenarioParseError(findings)
    return scenario


# ---------------------------------------------------------------------------
# Canonical emission
# ---------------------------------------------------------------------------


def _loss_doc(x: Loss) -> dict:
    doc: dict = {"id": x.id}
    if x.description:
        doc["description"] = x.description
    doc["weight"] = x.weight
    return doc


def _hazard_doc(x: Hazard) -> dict:
    doc: dict = {"id": x.id}
    if x.description:
        doc["description"] = x.description
    if x.associated:
        doc["associated"] = list(x.associated)
    return doc


def _asset_doc(x: Asset) -> dict:
    doc: dict = {"id": x.id}
    if x.name:
        doc["name"] = x.name
    doc["layer"] = x.layer
    if x.attributes:
        doc["attributes"] = dict(sorted(x.attributes.items()))
    if x.tags:
        doc["tags"] = list(x.tags)
    return doc


def _link_doc(x: Link) -> dict:
    doc: dict = {
        "id": x.id, "a": x.a, "b": x.b,
        "kind": x.kind, "direction": x.direction,
    }
    if x.attributes:
        doc["attributes"] = dict(sorted(x.attributes.items()))
    return doc


def _protection_doc(x: Protection) -> dict:
    doc: dict = {"id": x.id}
    if x.name:
        doc["name"] = x.name
    if x.description:
        doc["description"] = x.description
    doc["guards"] = [
        {"asset": g.asset} if g.via is None else {"asset": g.asset, "via": g.via}
        for g in x.guards
    ]
    return doc


def _profile_doc(x: AttackerProfile) -> dict:
    doc: dict = {"id": x.id}
    if x.name:
        doc["name"] = x.name
    doc["tier"] = x.tier
    doc["entry_assets"] = list(x.entry_assets)
    return doc


def emit_model(model: Model) -> str:
    """Serialize a model to canonical JSON text.

    Deterministic byte-for-byte: fixed section and key order, natural
    id sorting (already guaranteed by Model construction), two-space
    indent, trailing newline.  parse_model(emit_model(m)) == m."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "metadata": {
            k: v
            for k, v in (("name", model.metadata.name),
                         ("version", model.metadata.version))
            if v
        },
        "losses": [_loss_doc(x) for x in model.losses],
        "hazards": [_hazard_doc(x) for x in model.hazards],
        "assets": [_asset_doc(x) for x in model.assets],
        "links": [_link_doc(x) for x in model.links],
        "protections": [_protection_doc(x) for x in model.protections],
        "profiles": [_profile_doc(x) for x in model.profiles],
        "mappings": [
            {"hazard": m.hazard, "targets": list(m.targets)}
            for m in model.mappings
        ],
        "edge_scores": [
            {"link": s.link, "direction": s.direction,
             "likelihood": s.likelihood}
            for s in model.edge_scores
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
