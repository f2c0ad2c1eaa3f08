from ._core import (
    Error,
    Poly,
    adic,
    default_data_dir,
    dimension,
    groebner,
    member,
    member_localized,
    non_sos_obstruction,
    reproduce,
    series_root,
    verify_certificate,
)

__all__ = [
    "Error",
    "Poly",
    "adic",
    "default_data_dir",
    "dimension",
    "groebner",
    "member",
    "member_localized",
    "non_sos_obstruction",
    "reproduce",
    "series_root",
    "verify_certificate",
]
