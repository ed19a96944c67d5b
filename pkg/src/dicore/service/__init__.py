"""HTTP service wrapping the library for multi-client use.

Every endpoint is a thin adapter over a library call: validate the payload,
run the pure function, shape the response. Long experiment campaigns belong
on the CLI; the experiment endpoint runs synchronously and is meant for
small configurations.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import bounds, density, homomorphism, random_model
from ..experiments import (
    ExperimentSpec,
    exp_common_neighbors,
    exp_core_fraction,
    exp_max_acyclic,
    exp_neighbors,
    exp_pair_contraction,
    exp_subset_arcs,
    exp_tail_vs_bound,
    exp_threshold_sweep,
)
from ..experiments.config import DEFAULT_RATIOS
from ..homomorphism import VertexMap
from . import schemas

_PLAIN_EXPERIMENTS = {
    "neighbors": exp_neighbors,
    "common-neighbors": exp_common_neighbors,
    "max-acyclic": exp_max_acyclic,
    "subset-arcs": exp_subset_arcs,
    "pair-contraction": exp_pair_contraction,
    "core-fraction": exp_core_fraction,
    "tail-bound": exp_tail_vs_bound,
}


def create_app() -> FastAPI:
    app = FastAPI(title="dicore", version="0.1.0")

    @app.exception_handler(ValueError)
    async def value_error_handler(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/sample", response_model=schemas.SampleResponse)
    def sample(req: schemas.SampleRequest) -> schemas.SampleResponse:
        d = random_model.sample(req.n, req.p, random_model.Seed(req.seed, req.stream))
        return schemas.SampleResponse(
            digraph=schemas.DigraphModel.from_digraph(d), text=d.to_text()
        )

    @app.post("/probability-mass", response_model=schemas.ProbabilityMassResponse)
    def mass(req: schemas.ProbabilityMassRequest) -> schemas.ProbabilityMassResponse:
        d = req.digraph.to_digraph()
        return schemas.ProbabilityMassResponse(
            mass=random_model.probability_mass(d, req.p),
            log_mass=random_model.log_probability_mass(d, req.p),
        )

    @app.post("/is-core", response_model=schemas.IsCoreResponse)
    def is_core(req: schemas.IsCoreRequest) -> schemas.IsCoreResponse:
        verdict = homomorphism.is_core(req.digraph.to_digraph(), req.budget)
        witness = (
            schemas.VertexMapModel.from_map(verdict.witness) if verdict.witness else None
        )
        return schemas.IsCoreResponse(
            status=verdict.status.value, witness=witness, budget_spent=verdict.budget_spent
        )

    @app.post("/find-hom", response_model=schemas.SearchResponse)
    def find_hom(req: schemas.FindHomRequest) -> schemas.SearchResponse:
        result = homomorphism.find_acyclic_hom(
            req.source.to_digraph(), req.target.to_digraph(), req.budget
        )
        return _search_response(result)

    @app.post("/contains", response_model=schemas.SearchResponse)
    def contains(req: schemas.ContainsRequest) -> schemas.SearchResponse:
        result = homomorphism.subdigraph_contains(
            req.host.to_digraph(), req.pattern.to_digraph(), req.budget
        )
        return _search_response(result)

    @app.post("/verify-hom", response_model=schemas.VerifyHomResponse)
    def verify_hom(req: schemas.VerifyHomRequest) -> schemas.VerifyHomResponse:
        source = req.source.to_digraph()
        target = req.target.to_digraph()
        rho = VertexMap(source.n, target.n, tuple(t - 1 for t in req.image))
        return schemas.VerifyHomResponse(
            valid=homomorphism.verify_acyclic_hom(source, target, rho)
        )

    @app.post("/max-density", response_model=schemas.MaxDensityResponse)
    def max_density(req: schemas.MaxDensityRequest) -> schemas.MaxDensityResponse:
        d = req.digraph.to_digraph()
        solver = (
            density.max_density_bruteforce if req.method == "brute" else density.max_density_exact
        )
        result = solver(d)
        value = result.value
        return schemas.MaxDensityResponse(
            numerator=result.numerator,
            denominator=result.denominator,
            normalized=f"{value.numerator}/{value.denominator}",
            value=float(value),
            witness=[v + 1 for v in result.witness],
        )

    @app.post("/threshold-probability", response_model=schemas.ThresholdResponse)
    def threshold(req: schemas.ThresholdRequest) -> schemas.ThresholdResponse:
        return schemas.ThresholdResponse(
            threshold=density.threshold_probability(req.pattern.to_digraph(), req.n)
        )

    @app.post("/bound/tail", response_model=schemas.TailBoundResponse)
    def tail_bound(req: schemas.TailBoundRequest) -> schemas.TailBoundResponse:
        upper = bounds.chernoff_upper(req.mean, req.t)
        lower = bounds.chernoff_lower(req.mean, req.t)
        return schemas.TailBoundResponse(
            upper=schemas.TailBoundSide(
                rate_bound=upper.rate_bound,
                quadratic_upper=upper.quadratic_upper,
                quadratic_lower=upper.quadratic_lower,
            ),
            lower=schemas.TailBoundSide(
                rate_bound=lower.rate_bound,
                quadratic_upper=lower.quadratic_upper,
                quadratic_lower=lower.quadratic_lower,
            ),
        )

    @app.post("/bound/corollary", response_model=schemas.CorollaryResponse)
    def corollary(req: schemas.CorollaryRequest) -> schemas.CorollaryResponse:
        result = bounds.corollary_bound(req.eps, req.mean)
        return schemas.CorollaryResponse(general=result.general, simplified=result.simplified)

    @app.post("/experiments/{name}", response_model=schemas.ExperimentResponse)
    def run_experiment(name: str, req: schemas.ExperimentRequest) -> schemas.ExperimentResponse:
        spec = ExperimentSpec(
            experiment=name,
            ns=tuple(req.ns),
            ps=tuple(req.ps),
            trials=req.trials,
            seed=req.seed,
            k=req.k,
            budget=req.budget,
            pairs_per_trial=req.pairs_per_trial,
            ratios=tuple(req.ratios) if req.ratios is not None else DEFAULT_RATIOS,
            binomial_n=req.binomial_n,
            tail_points=req.tail_points,
        )
        if name == "threshold":
            if req.pattern is None:
                raise ValueError("threshold experiment needs a pattern digraph")
            table = exp_threshold_sweep(req.pattern.to_digraph(), spec)
        elif name in _PLAIN_EXPERIMENTS:
            table = _PLAIN_EXPERIMENTS[name](spec)
        else:
            raise ValueError(
                f"unknown experiment {name!r}; expected one of "
                f"{sorted([*_PLAIN_EXPERIMENTS, 'threshold'])}"
            )
        return schemas.ExperimentResponse(
            name=table.name,
            header=list(table.header),
            rows=[list(row) for row in table.rows],
            csv=table.to_csv(),
        )

    return app


def _search_response(result) -> schemas.SearchResponse:
    mapping = schemas.VertexMapModel.from_map(result.mapping) if result.mapping else None
    return schemas.SearchResponse(
        found=result.found,
        exhausted=result.exhausted,
        mapping=mapping,
        nodes_expanded=result.nodes_expanded,
    )


app = create_app()
