from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel


class InfoReport(BaseModel):
    vertices: int
    arrows: int
    multisquare_free: bool
    multisquare_witness: Optional[str] = None
    thin_pairs: int
    thick_pairs: int
    multisquare_pairs: int
    triangles: int
    longest_path: Optional[int] = None  # None: a directed cycle, paths of every length


class ClassRecord(BaseModel):
    members: List[int]
    thin: bool
    bipartite: bool
    parts: Optional[List[List[int]]] = None
    representative: int
    odd_cycle: Optional[List[int]] = None
    supported_for_basis: bool = True


class ShortMoveReport(BaseModel):
    level: int
    nodes: List[str]
    edges: List[Tuple[int, int, int]]
    classes: List[ClassRecord]


class BasisVectorRecord(BaseModel):
    terms: Dict[str, str]  # path label -> exact coefficient
    class_representative: Optional[str] = None


class BasisReport(BaseModel):
    level: int
    field: str
    method: str
    vectors: List[BasisVectorRecord]


class HomologyReport(BaseModel):
    field: str
    omega_dims: List[int]
    boundary_ranks: List[int]
    ph_dims: List[int]
    euler: Optional[int] = None
    bounded: bool
    method_agreement: Optional[bool] = None  # None: class method not applicable


class CochainReport(BaseModel):
    level: int
    free_rank: int
    torsion: List[int]
    representatives: List[str]
    torsion_representatives: List[str] = []
    method_agreement: Optional[bool] = None


class BoundaryEntryLevel(BaseModel):
    level: int
    entries: Dict[str, int]  # nonzero entry -> multiplicity
    non_unit: bool


class BoundaryEntryReport(BaseModel):
    field: str
    levels: List[BoundaryEntryLevel]
    all_unit: bool


class CheckResult(BaseModel):
    name: str
    anchor: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    checks: List[CheckResult]
    passed: bool


# Command payloads: one JSON document per CLI invocation.

class ShortMoveRun(BaseModel):
    levels: List[ShortMoveReport]


class BasisRun(BaseModel):
    bases: List[BasisReport]


class HomologyRun(BaseModel):
    summaries: List[HomologyReport]
    boundary_entries: List[BoundaryEntryReport] = []


class CochainRun(BaseModel):
    levels: List[CochainReport]
