from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class InternalCollision(BaseModel):
    """A XOR value produced by more than one pair inside one support."""
    row: int
    value: int
    count: int


class DifferenceSetIntersection(BaseModel):
    """Common values of the difference sets of two supports."""
    rows: Tuple[int, int]
    values: List[int]


class DifferenceSetReport(BaseModel):
    """Outcome of a difference-set audit over a support matrix."""
    ell: int
    internal_collisions: List[InternalCollision] = Field(default_factory=list)
    intersections: List[DifferenceSetIntersection] = Field(default_factory=list)

    @property
    def is_clean(self) -> bool:
        return not self.internal_collisions and not self.intersections

    @property
    def overlap_count(self) -> int:
        return sum(len(item.values) for item in self.intersections)


class CycleCensus(BaseModel):
    """Girth and short-cycle counts of a Tanner graph."""
    girth: Optional[int] = None
    cap: int = 8
    counts: Dict[int, int] = Field(default_factory=dict)
    unavoidable_4: Optional[int] = None
    avoidable_4: Optional[int] = None
    method: str = "graph"

    @property
    def girth_label(self) -> str:
        return str(self.girth) if self.girth is not None else f">={self.cap}"


class DistanceMethod(str, Enum):
    """Minimum-distance search strategies."""
    EXHAUSTIVE = "exhaustive"
    PROBABILISTIC = "probabilistic"


class DistanceReport(BaseModel):
    """Classical and logical-only minimum weights found by a search."""
    method: DistanceMethod
    n: int
    classical_d: Optional[int] = None
    classical_exact: bool = False
    logical_d: Optional[int] = None
    logical_exact: bool = False
    max_weight: Optional[int] = None
    iterations: Optional[int] = None
    seed: Optional[int] = None
    effort: int = 0

    @property
    def quantum_d_lower(self) -> Optional[int]:
        """d(code) >= d(C): an exact classical distance lower-bounds the quantum one."""
        return self.classical_d if self.classical_exact else None


class DecoderSnapshot(BaseModel):
    """Decoder settings recorded with every simulation result."""
    algorithm: str = "min-sum"
    schedule: str = "flooding"
    max_iterations: int
    normalization: float
    llr_clip: float


class SimResult(BaseModel):
    """One Monte-Carlo point of a logical-error-rate sweep."""
    p: float
    trials: int
    logical_errors: int
    ler: float
    ci_lo: float
    ci_hi: float
    x_failures: int = 0
    z_failures: int = 0
    joint_errors: int = 0
    joint_ler: float = 0.0
    stopped_by: str = "target_errors"
    seed: int
    code_id: str
    accounting: str = "component"
    decoder: DecoderSnapshot

    def csv_row(self) -> List[str]:
        return [
            repr(self.p),
            str(self.trials),
            str(self.logical_errors),
            repr(self.ler),
            repr(self.ci_lo),
            repr(self.ci_hi),
        ]


class CodeParameters(BaseModel):
    """Derived parameters of a dual-containing CSS code."""
    code_id: str
    construction: Optional[str] = None
    n: int
    rank: int
    k: int
    k_q: int
    r: float
    r_q: float
    design_r_q: Optional[float] = None
    row_weight_range: Tuple[int, int]
    col_weight_range: Tuple[int, int]
    orthogonal: bool = True
