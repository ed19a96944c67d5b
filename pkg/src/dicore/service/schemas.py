"""Request/response models for the HTTP service.

Vertices are 1-based on the wire, matching every other I/O surface of the
package; conversion to the internal 0-based labels happens here.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..digraph import Digraph
from ..homomorphism import DEFAULT_BUDGET, VertexMap


class DigraphModel(BaseModel):
    """A digraph as a vertex count and 1-based arc list."""

    n: int = Field(ge=0)
    arcs: list[tuple[int, int]] = []

    @classmethod
    def from_digraph(cls, d: Digraph) -> "DigraphModel":
        return cls(n=d.n, arcs=[(u + 1, v + 1) for u, v in sorted(d.arcs)])

    def to_digraph(self) -> Digraph:
        for u, v in self.arcs:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"arc ({u}, {v}) out of range 1..{self.n}")
        return Digraph(self.n, [(u - 1, v - 1) for u, v in self.arcs])


class VertexMapModel(BaseModel):
    """A vertex map as a 1-based image list: image[i] is the image of i+1."""

    source_size: int
    target_size: int
    image: list[int]

    @classmethod
    def from_map(cls, m: VertexMap) -> "VertexMapModel":
        return cls(
            source_size=m.source_size,
            target_size=m.target_size,
            image=[t + 1 for t in m.image],
        )


class SampleRequest(BaseModel):
    n: int = Field(ge=0)
    p: float
    seed: int = Field(ge=0)
    stream: int = Field(default=0, ge=0)


class SampleResponse(BaseModel):
    digraph: DigraphModel
    text: str


class ProbabilityMassRequest(BaseModel):
    digraph: DigraphModel
    p: float


class ProbabilityMassResponse(BaseModel):
    mass: float
    log_mass: float


class IsCoreRequest(BaseModel):
    digraph: DigraphModel
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)


class IsCoreResponse(BaseModel):
    status: str
    witness: VertexMapModel | None = None
    budget_spent: int


class FindHomRequest(BaseModel):
    source: DigraphModel
    target: DigraphModel
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)


class ContainsRequest(BaseModel):
    host: DigraphModel
    pattern: DigraphModel
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)


class SearchResponse(BaseModel):
    found: bool
    exhausted: bool
    mapping: VertexMapModel | None = None
    nodes_expanded: int


class VerifyHomRequest(BaseModel):
    source: DigraphModel
    target: DigraphModel
    image: list[int]


class VerifyHomResponse(BaseModel):
    valid: bool


class MaxDensityRequest(BaseModel):
    digraph: DigraphModel
    method: str = Field(default="exact", pattern="^(brute|exact)$")


class MaxDensityResponse(BaseModel):
    numerator: int
    denominator: int
    normalized: str
    value: float
    witness: list[int]


class ThresholdRequest(BaseModel):
    pattern: DigraphModel
    n: int = Field(ge=2)


class ThresholdResponse(BaseModel):
    threshold: float


class TailBoundRequest(BaseModel):
    mean: float = Field(gt=0, description="the binomial mean, lambda")
    t: float = Field(ge=0)


class TailBoundSide(BaseModel):
    rate_bound: float
    quadratic_upper: float
    quadratic_lower: float


class TailBoundResponse(BaseModel):
    upper: TailBoundSide
    lower: TailBoundSide


class CorollaryRequest(BaseModel):
    eps: float = Field(gt=0)
    mean: float = Field(gt=0)


class CorollaryResponse(BaseModel):
    general: float
    simplified: float | None


class ExperimentRequest(BaseModel):
    """Experiment config; same keys as the CLI's --config JSON."""

    ns: list[int] = []
    ps: list[float] = []
    trials: int = Field(ge=1)
    seed: int = Field(ge=0)
    k: int | None = None
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)
    pairs_per_trial: int = 100
    ratios: list[float] | None = None
    binomial_n: int | None = None
    tail_points: int = 20
    pattern: DigraphModel | None = None


class ExperimentResponse(BaseModel):
    name: str
    header: list[str]
    rows: list[list]
    csv: str
