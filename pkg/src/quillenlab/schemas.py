"""Pydantic request/response models for the verification service and CLI."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .admissible import Collection, collection_from_json
from .groups import GroupSpec, named_group, spec_from_json

SCHEMA_VERSION = 1


class GroupModel(BaseModel):
    """A named group ("Alt(8)", "SL(3,4)", ...) or an explicit generator spec."""

    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    kind: Optional[Literal["perm", "mat"]] = None
    n: Optional[int] = None
    q: Optional[int] = None
    det1: bool = False
    quotient_center: bool = False
    generators: list = Field(default_factory=list)
    cap: Optional[int] = None

    def to_spec(self) -> GroupSpec:
        if self.kind is None:
            if not self.name:
                raise ValueError("group needs either a name or a full spec")
            return named_group(self.name, cap=self.cap)
        return spec_from_json(self.model_dump())


GroupArg = Union[str, GroupModel]


def group_to_spec(group: GroupArg) -> GroupSpec:
    if isinstance(group, str):
        return named_group(group)
    return group.to_spec()


class CollectionModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    group: GroupArg
    p: int
    basis: list
    c: list
    maximality: Literal["enumerate", "asserted"] = "enumerate"
    recipe: Optional[dict] = None

    def to_collection(self) -> Collection:
        payload = self.model_dump()
        if isinstance(self.group, GroupModel):
            payload["group"] = self.group.model_dump()
        return collection_from_json(payload)

    @staticmethod
    def from_collection(coll: Collection) -> "CollectionModel":
        return CollectionModel.model_validate(coll.to_json())


# -- requests ---------------------------------------------------------------


class ConstructRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Literal["sym-alt", "a8-p3", "linear", "projective", "obstruction"]
    n: Optional[int] = None
    q: Optional[int] = None
    p: Optional[int] = None
    kind: Optional[str] = None          # alt/sym, SL/GL, PGL/PSL, GL/SL/GU/SU
    quotient: bool = False              # push the result to the central quotient


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    collection: CollectionModel
    check: Literal["admissible", "faithful"] = "admissible"


class CertifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    collection: CollectionModel
    independent: bool = True


class HomologyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    group: GroupArg
    p: int


class SearchRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    group: GroupArg
    p: int
    max_found: int = 1                  # 0 = exhaust the whole space
    max_rank: int = 4
    forced: bool = False
    frame_reduction: bool = True
    conjugacy_reduction: bool = False


class SuiteRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    criteria: Optional[list[str]] = None


# -- responses ---------------------------------------------------------------


class ConstructResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    family: str
    collection: Optional[dict] = None
    obstruction: Optional[dict] = None


class VerifyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    check: str
    verdict: bool
    report: dict


class CertifyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    certified: bool
    C_nonzero_at: list
    D_all_zero: bool
    independent_homology_check: str
    maximality: Union[bool, str]
    coefficient_ring: str
    errors: list


class HomologyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    group: str
    p: int
    rank: int
    betti: dict
    torsion: dict
    qdp: bool


class SearchResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    outcome: Literal["found", "none", "obstructed", "capped"]
    collections: list
    stats: dict
    obstruction: Optional[dict] = None
    reason: Optional[str] = None


class SuiteResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    all_passed: bool
    results: list


class HealthResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    status: str = "ok"


def exit_code_for(response) -> int:
    """CLI/exit-code convention: 0 verified/found, 1 refuted/none, 2 capped/error."""
    if isinstance(response, VerifyResponse):
        return 0 if response.verdict else 1
    if isinstance(response, CertifyResponse):
        return 0 if response.certified else 1
    if isinstance(response, SearchResponse):
        if response.outcome == "found":
            return 0
        if response.outcome in ("none", "obstructed"):
            return 1
        return 2
    if isinstance(response, SuiteResponse):
        return 0 if response.all_passed else 1
    if isinstance(response, ConstructResponse):
        return 0
    if isinstance(response, HomologyResponse):
        return 0
    return 0
