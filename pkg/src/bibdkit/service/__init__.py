"""HTTP service over the core library, and the handler functions the
CLI shares with it."""

from .app import app
from .handlers import (
    DomainRejection,
    svc_bounds,
    svc_check,
    svc_complement,
    svc_construct,
    svc_derive,
    svc_health,
    svc_residual,
    svc_resolve,
    svc_scan,
    svc_table,
    svc_verify,
)

__all__ = [
    "app",
    "DomainRejection",
    "svc_bounds",
    "svc_check",
    "svc_complement",
    "svc_construct",
    "svc_derive",
    "svc_health",
    "svc_residual",
    "svc_resolve",
    "svc_scan",
    "svc_table",
    "svc_verify",
]
