"""The FastAPI service wrapping the core library.

The handler functions hold all the request/response logic; the HTTP routes
and the CLI are both thin wrappers over them, so there is exactly one code
path for every operation.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .admissible import is_admissible, is_faithful
from .complexes import qdp_check
from .constructions import (
    a8_p3, linear_d_eq_1, linear_d_gt_1, multiplicative_order, obstruction_family,
    projective_linear, quotient_collection, symmetric_alternating,
)
from .cycles import certify_nonzero_class
from .groups import CapExceeded
from .schemas import (
    CertifyRequest, CertifyResponse, ConstructRequest, ConstructResponse,
    HealthResponse, HomologyRequest, HomologyResponse, SearchRequest,
    SearchResponse, SuiteRequest, SuiteResponse, VerifyRequest, VerifyResponse,
    group_to_spec,
)
from .search import SearchLimits, search_admissible
from .suite import paper_suite


class ServiceError(Exception):
    """Domain error carrying the HTTP status for the API layer."""

    def __init__(self, message: str, status: int = 400):
        super().__init__(message)
        self.status = status


def handle_construct(req: ConstructRequest) -> ConstructResponse:
    fam = req.family
    try:
        if fam == "sym-alt":
            coll = symmetric_alternating(req.n, req.p, kind=req.kind or "alt")
        elif fam == "a8-p3":
            coll = a8_p3(kind=req.kind or "alt")
        elif fam == "linear":
            if req.q is None or req.n is None or req.p is None:
                raise ValueError("linear construction needs n, q and p")
            d = multiplicative_order(req.q, req.p)
            if d == 1:
                coll = linear_d_eq_1(req.n, req.q, req.p)
            else:
                coll = linear_d_gt_1(req.n, req.q, req.p, kind=req.kind or "SL")
        elif fam == "projective":
            coll = projective_linear(req.n, req.q, req.p, req.kind or "PSL")
        elif fam == "obstruction":
            cert = obstruction_family(req.kind or "GL", req.n, req.q, req.p)
            return ConstructResponse(family=fam, obstruction=cert.to_json())
        else:  # pragma: no cover - pydantic rejects unknown families
            raise ValueError(f"unknown family {fam!r}")
        if req.quotient:
            coll = quotient_collection(coll)
        return ConstructResponse(family=fam, collection=coll.to_json())
    except (ValueError, ZeroDivisionError) as exc:
        raise ServiceError(str(exc)) from exc


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    try:
        coll = req.collection.to_collection()
        if req.check == "faithful":
            rep = is_faithful(coll)
            return VerifyResponse(check="faithful", verdict=rep.faithful,
                                  report=rep.to_json())
        rep = is_admissible(coll)
        return VerifyResponse(check="admissible", verdict=rep.admissible,
                              report=rep.to_json())
    except CapExceeded as exc:
        raise ServiceError(str(exc), status=422) from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise ServiceError(str(exc)) from exc


def handle_certify(req: CertifyRequest) -> CertifyResponse:
    try:
        coll = req.collection.to_collection()
        cert = certify_nonzero_class(coll, independent=req.independent)
        return CertifyResponse(
            certified=cert.ok,
            C_nonzero_at=[{"delta": list(lab), "tuple": list(tup)}
                          for lab, tup in cert.C_nonzero_at],
            D_all_zero=cert.D_all_zero,
            independent_homology_check=cert.independent_check,
            maximality=cert.maximality,
            coefficient_ring=cert.coefficient_ring,
            errors=cert.errors,
        )
    except CapExceeded as exc:
        raise ServiceError(str(exc), status=422) from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise ServiceError(str(exc)) from exc


def handle_homology(req: HomologyRequest) -> HomologyResponse:
    try:
        spec = group_to_spec(req.group)
        rep = qdp_check(spec, req.p)
    except CapExceeded as exc:
        raise ServiceError(str(exc), status=422) from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise ServiceError(str(exc)) from exc
    payload = rep.to_json()
    return HomologyResponse(group=payload["group"], p=req.p, rank=payload["rank"],
                            betti=payload["betti"], torsion=payload["torsion"],
                            qdp=payload["qdp"])


def handle_search(req: SearchRequest) -> SearchResponse:
    try:
        spec = group_to_spec(req.group)
    except (ValueError, ZeroDivisionError) as exc:
        raise ServiceError(str(exc)) from exc
    limits = SearchLimits(
        max_rank=req.max_rank,
        max_found=req.max_found,
        forced=req.forced,
        frame_reduction=req.frame_reduction,
        conjugacy_reduction=req.conjugacy_reduction,
    )
    try:
        res = search_admissible(spec, req.p, limits)
    except (ValueError, ZeroDivisionError) as exc:
        raise ServiceError(str(exc)) from exc
    payload = res.to_json()
    return SearchResponse(outcome=payload["outcome"],
                          collections=payload["collections"],
                          stats=payload["stats"],
                          obstruction=payload.get("obstruction"),
                          reason=payload.get("reason"))


def handle_suite(req: SuiteRequest) -> SuiteResponse:
    report = paper_suite(criteria=req.criteria)
    payload = report.to_json()
    return SuiteResponse(all_passed=payload["all_passed"], results=payload["results"])


def create_app() -> FastAPI:
    app = FastAPI(
        title="quillenlab",
        description="Admissible collections, signed cycles and homology "
                    "certificates on p-subgroup posets of finite groups",
        version="0.1.0",
    )

    def _wrap(handler, request):
        try:
            return handler(request)
        except ServiceError as exc:
            raise HTTPException(status_code=exc.status, detail=str(exc)) from exc

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse()

    @app.post("/construct", response_model=ConstructResponse)
    def construct(req: ConstructRequest):
        return _wrap(handle_construct, req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        return _wrap(handle_verify, req)

    @app.post("/certify", response_model=CertifyResponse)
    def certify(req: CertifyRequest):
        return _wrap(handle_certify, req)

    @app.post("/homology", response_model=HomologyResponse)
    def homology_route(req: HomologyRequest):
        return _wrap(handle_homology, req)

    @app.post("/search", response_model=SearchResponse)
    def search(req: SearchRequest):
        return _wrap(handle_search, req)

    @app.post("/paper-suite", response_model=SuiteResponse)
    def suite_route(req: SuiteRequest):
        return _wrap(handle_suite, req)

    return app


app = create_app()
