"""
Services package initialization
"""

from .fca_service import fca_service
from .tbox_service import tbox_service
from .extraction_service import extraction_service
from .tableau_service import Verdict, tableau_service
from .audit_service import audit_service
from .oracle_service import oracle_service
from .batch_service import batch_service
