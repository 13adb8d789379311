from qdcss.schemas.code_spec import CodeSpecDocument, load_code_spec, parse_code_spec

__all__ = ["CodeSpecDocument", "load_code_spec", "parse_code_spec"]
