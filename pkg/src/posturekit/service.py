"""Read-only JSON HTTP API for one loaded model.

The service never mutates anything: what-if scenarios are computed
against the same immutable model snapshot every request.  Baseline
analyses (no profile selected, default depth) are precomputed at
startup; any other parameter combination is computed per request.

Error surface: unknown ids (hazard, profile, asset, protection, link)
return 404; structurally malformed bodies or parameters return 400.
Both carry {"error": {"code", "message"}}.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .analysis import (
    DEFAULT_THIN_THRESHOLD,
    AnalysisResults,
    analyze_model,
    classify_chain,
    coverage,
    hazard_chains,
    what_if,
)
from .graph import DEFAULT_MAX_DEPTH
from .ingest import parse_scenario_obj
from .model import (
    Model,
    NoMappingError,
    UnknownIdError,
    resolve_losses,
)
from .report import (
    chain_to_dict,
    coverage_to_dict,
    delta_to_dict,
    graph_to_dict,
    ranking_to_dict,
)

_CLASS_SEVERITY = {
    "unpreventable": 0,
    "unprotected": 1,
    "thin": 2,
    "defended": 3,
}


class _BadRequest(Exception):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message}},
    )


def _int_param(value: str | None, name: str, default: int) -> int:
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise _BadRequest(f"{name} must be an integer, got {value!r}")


def create_app(
    model: Model,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
    thin_threshold: int = DEFAULT_THIN_THRESHOLD,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    """Build the API application for one model.

    ``max_depth`` and ``thin_threshold`` are the session defaults;
    requests may override them per call via query/body parameters.
    """
    app = FastAPI(title="posturekit", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    app.state.model = model
    app.state.max_depth = max_depth
    app.state.thin_threshold = thin_threshold
    baseline: AnalysisResults = analyze_model(
        model, None, None, max_depth, thin_threshold
    )
    app.state.baseline = baseline

    def class_map(chains_by_hazard) -> dict[tuple[str, int], str]:
        return {
            (hazard, index): classify_chain(chain, thin_threshold)
            for hazard, chains in chains_by_hazard.items()
            for index, chain in enumerate(chains)
        }

    def enriched_graph(results: AnalysisResults) -> dict:
        doc = graph_to_dict(results.merged, model)
        classes = class_map(results.chains_by_hazard)
        for edge in doc["edges"]:
            worst = None
            for member in edge["memberships"]:
                cls = classes.get((member["hazard"], member["chain"]))
                if cls is not None and (
                    worst is None
                    or _CLASS_SEVERITY[cls] < _CLASS_SEVERITY[worst]
                ):
                    worst = cls
            edge["worst_class"] = worst
        return doc

    @app.exception_handler(_BadRequest)
    async def bad_request_handler(request: Request, exc: _BadRequest):
        return _error(400, "E-BAD-REQUEST", exc.message)

    @app.exception_handler(UnknownIdError)
    async def unknown_id_handler(request: Request, exc: UnknownIdError):
        return _error(404, exc.code, str(exc))

    @app.exception_handler(NoMappingError)
    async def no_mapping_handler(request: Request, exc: NoMappingError):
        return _error(404, exc.code, str(exc))

    # -- read endpoints -----------------------------------------------------

    @app.get("/api/v1/model")
    def get_model():
        return {
            "schema_version": "1",
            "metadata": {
                "name": model.metadata.name,
                "version": model.metadata.version,
            },
            "counts": {
                "losses": len(model.losses),
                "hazards": len(model.hazards),
                "assets": len(model.assets),
                "links": len(model.links),
                "protections": len(model.protections),
                "profiles": len(model.profiles),
                "mappings": len(model.mappings),
                "edge_scores": len(model.edge_scores),
            },
            "profiles": [
                {
                    "id": p.id,
                    "name": p.name,
                    "tier": p.tier,
                    "entry_assets": list(p.entry_assets),
                }
                for p in model.profiles
            ],
            "mapped_hazards": [m.hazard for m in model.mappings],
            "defaults": {
                "max_depth": max_depth,
                "thin_threshold": thin_threshold,
            },
        }

    @app.get("/api/v1/assets")
    def get_assets():
        return [
            {
                "id": a.id,
                "name": a.display_name,
                "layer": a.layer,
                "attributes": dict(sorted(a.attributes.items())),
                "tags": list(a.tags),
            }
            for a in model.assets
        ]

    @app.get("/api/v1/losses")
    def get_losses():
        return [
            {"id": x.id, "description": x.description, "weight": x.weight}
            for x in model.losses
        ]

    @app.get("/api/v1/hazards")
    def get_hazards():
        return [
            {
                "id": h.id,
                "description": h.description,
                "associated": list(h.associated),
                "resolved_losses": sorted(resolve_losses(model, h.id)),
                "mapped": h.id in model.mappings_by_hazard,
            }
            for h in model.hazards
        ]

    @app.get("/api/v1/protections")
    def get_protections():
        return [
            {
                "id": p.id,
                "name": p.display_name,
                "description": p.description,
                "guards": [
                    {"asset": g.asset, "via": g.via} for g in p.guards
                ],
            }
            for p in model.protections
        ]

    # -- analysis endpoints ---------------------------------------------

    @app.get("/api/v1/hazards/{hazard_id}/chains")
    def get_chains(hazard_id: str, profile: str | None = None,
                   max_depth: str | None = None):
        depth = _int_param(max_depth, "max_depth", app.state.max_depth)
        if depth < 1:
            raise _BadRequest(f"max_depth must be >= 1, got {depth}")
        if profile is None and depth == app.state.max_depth:
            model.mapping_for(hazard_id)  # 404 for unknown/unmapped
            chains = list(baseline.chains_by_hazard.get(hazard_id, ()))
        else:
            chains = hazard_chains(model, hazard_id, profile, None, depth)
        return {
            "hazard": hazard_id,
            "profile": profile,
            "max_depth": depth,
            "count": len(chains),
            "chains": [chain_to_dict(c) for c in chains],
        }

    @app.get("/api/v1/hazards/{hazard_id}/coverage")
    def get_coverage(hazard_id: str, profile: str | None = None,
                     max_depth: str | None = None,
                     thin_threshold: str | None = None):
        depth = _int_param(max_depth, "max_depth", app.state.max_depth)
        threshold = _int_param(
            thin_threshold, "thin_threshold", app.state.thin_threshold
        )
        if depth < 1:
            raise _BadRequest(f"max_depth must be >= 1, got {depth}")
        if profile is None and depth == app.state.max_depth:
            model.mapping_for(hazard_id)
            chains = list(baseline.chains_by_hazard.get(hazard_id, ()))
        else:
            chains = hazard_chains(model, hazard_id, profile, None, depth)
        doc = coverage_to_dict(coverage(chains, threshold))
        doc["hazard"] = hazard_id
        doc["profile"] = profile
        return doc

    @app.get("/api/v1/graph/merged")
    def get_merged(profile: str | None = None, max_depth: str | None = None):
        depth = _int_param(max_depth, "max_depth", app.state.max_depth)
        if depth < 1:
            raise _BadRequest(f"max_depth must be >= 1, got {depth}")
        if profile is None and depth == app.state.max_depth:
            return enriched_graph(baseline)
        results = analyze_model(model, profile, None, depth, thin_threshold)
        return enriched_graph(results)

    @app.get("/api/v1/protections/ranking")
    def get_ranking(profile: str | None = None, max_depth: str | None = None):
        depth = _int_param(max_depth, "max_depth", app.state.max_depth)
        if depth < 1:
            raise _BadRequest(f"max_depth must be >= 1, got {depth}")
        if profile is None and depth == app.state.max_depth:
            return ranking_to_dict(baseline.ranking)
        results = analyze_model(model, profile, None, depth, thin_threshold)
        return ranking_to_dict(results.ranking)

    # -- what-if ----------------------------------------------------------

    @app.post("/api/v1/whatif")
    async def post_whatif(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise _BadRequest("request body is not valid JSON")
        if not isinstance(body, dict):
            raise _BadRequest("request body must be a JSON object")
        hazard = body.get("hazard")
        if not isinstance(hazard, str) or not hazard:
            raise _BadRequest("field 'hazard' (string) is required")
        profile = body.get("profile")
        if profile is not None and not isinstance(profile, str):
            raise _BadRequest("field 'profile' must be a string")
        raw_depth = body.get("max_depth", app.state.max_depth)
        if not isinstance(raw_depth, int) or isinstance(raw_depth, bool) \
                or raw_depth < 1:
            raise _BadRequest("field 'max_depth' must be a positive integer")
        scenario_doc = body.get("scenario", {})
        scenario, findings = parse_scenario_obj(scenario_doc)
        if scenario is None:
            first = next(
                (f for f in findings if f.severity == "error"), None
            )
            raise _BadRequest(
                f"malformed scenario: "
                f"{first.message if first else 'unknown error'}"
            )
        unknown_keys = [
            k for k in body
            if k not in ("hazard", "profile", "scenario", "max_depth")
        ]
        if unknown_keys:
            raise _BadRequest(f"unknown field {unknown_keys[0]!r}")
        delta = what_if(
            model, hazard, scenario, profile,
            raw_depth, app.state.thin_threshold,
        )
        return delta_to_dict(delta)

    return app
