from qdcss.services.file_service import FileService

__all__ = ["FileService"]
