import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from qdcss.algebra.dyadic import QdBlockMatrix
from qdcss.algebra.gf2 import BitMatrix
from qdcss.config.settings import settings
from qdcss.exceptions import InfeasibleConstructionError, SpecValidationError
from qdcss.schemas.code_spec import CodeSpecDocument, load_code_spec
from qdcss.schemas.reports import CodeParameters
from qdcss.services.catalog import get_code_spec
from qdcss.tools.bicycle import construct_bicycle
from qdcss.tools.constructions import (
    ConstructionASpec,
    ConstructionBSpec,
    construct_a,
    construct_b,
    construction_a_design_rate,
    random_construction_a_spec,
)
from qdcss.tools.css_code import CssCode, build_css
from qdcss.tools.heuristic import HeuristicConfig, generate_supports
from qdcss.utils.cache import MatrixCache

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuiltCode:
    """A code together with the document and block structure it came from."""

    document: CodeSpecDocument
    blocks: Optional[QdBlockMatrix]
    code: CssCode

    @property
    def design_r_q(self) -> float:
        doc = self.document
        if doc.construction == "A":
            return construction_a_design_rate(doc.w, doc.u)
        if doc.construction == "B":
            return 1.0 - 2.0 / doc.u
        return doc.k / doc.n

    def parameters(self) -> CodeParameters:
        return self.code.parameters(construction=self.document.construction, design_r_q=self.design_r_q)


def load_document(spec_path: Optional[Path] = None, code_name: Optional[str] = None) -> CodeSpecDocument:
    """
    Read a code-spec document from a file or the catalog.

    Args:
        spec_path: JSON code-spec file
        code_name: Catalog name, used when no file is given

    Returns:
        CodeSpecDocument: Validated document

    Raises:
        SpecValidationError: If neither or both sources are given, or the document is invalid
    """
    if (spec_path is None) == (code_name is None):
        raise SpecValidationError("give exactly one of a spec file or a catalog code name")
    if spec_path is not None:
        return load_code_spec(spec_path)
    return get_code_spec(code_name)


def resolve_document(doc: CodeSpecDocument) -> CodeSpecDocument:
    """
    Fill in seed-driven fields so the document fully determines the matrix.

    Construction A without z0/z draws random distinct DPMs; Construction B without
    supports runs the difference-set support search.

    Raises:
        InfeasibleConstructionError: If the support search gives up
    """
    if doc.construction == "A" and (doc.z0 is None or doc.z is None):
        spec = random_construction_a_spec(doc.ell, doc.w, doc.u, seed=doc.seed)
        logger.info("drew Construction A indices z0=%d z=%s from seed %s", spec.z0, list(spec.z), doc.seed)
        return doc.model_copy(update={"z0": spec.z0, "z": list(spec.z)})
    if doc.construction == "B" and doc.supports is None:
        search = generate_supports(HeuristicConfig(ell=doc.ell, u=doc.u, v=doc.v, seed=doc.seed))
        if not search.found:
            raise InfeasibleConstructionError(
                f"support search failed after {search.attempts} attempts "
                f"({search.rows_completed} of {doc.u} rows)"
            )
        return doc.model_copy(update={"supports": [list(s) for s in search.supports]})
    return doc


def construction_spec(doc: CodeSpecDocument) -> Union[ConstructionASpec, ConstructionBSpec]:
    """Typed construction parameters of a resolved A or B document."""
    if doc.construction == "A":
        return ConstructionASpec(
            ell=doc.ell, w=doc.w, u=doc.u, z0=doc.z0, z=tuple(doc.z), repeated_index=doc.repeated_index,
        )
    if doc.construction == "B":
        return ConstructionBSpec(ell=doc.ell, u=doc.u, v=doc.v, supports=tuple(tuple(s) for s in doc.supports))
    raise SpecValidationError("bicycle codes have no dyadic block structure")


def build_blocks(doc: CodeSpecDocument) -> Optional[QdBlockMatrix]:
    """Block matrix of an A or B document, None for bicycle codes."""
    if doc.construction == "bicycle":
        return None
    spec = construction_spec(doc)
    return construct_a(spec) if doc.construction == "A" else construct_b(spec)


def build_code(doc: CodeSpecDocument, use_cache: Optional[bool] = None) -> BuiltCode:
    """
    Build the CSS code described by a document.

    Args:
        doc: Code-spec document (seed-driven fields are resolved first)
        use_cache: Read/write the expanded matrix cache; defaults to settings.CACHE_ENABLED

    Returns:
        BuiltCode: The code and its provenance

    Raises:
        SpecValidationError: If the construction parameters are invalid
        InfeasibleConstructionError: If the construction cannot be realized
    """
    doc = resolve_document(doc)
    blocks = build_blocks(doc)
    use_cache = settings.CACHE_ENABLED if use_cache is None else use_cache
    cache = MatrixCache(str(settings.CACHE_DIR), settings.CACHE_TTL_DAYS) if use_cache else None

    dense = cache.get(doc.canonical()) if cache else None
    if dense is not None:
        h = BitMatrix.from_dense(dense)
    elif blocks is not None:
        h = blocks.expand()
    else:
        h = construct_bicycle(doc.n, doc.row_weight, doc.k, seed=doc.seed)
    if cache is not None and dense is None:
        cache.set(doc.canonical(), h.to_dense())

    return BuiltCode(document=doc, blocks=blocks, code=build_css(h, code_id=doc.code_id))
