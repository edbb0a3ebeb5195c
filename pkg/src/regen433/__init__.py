"""Exact-repair (4,3,3) regenerating codes, a storage-cluster simulator and an
exact entropy-LP prover for the storage/repair-bandwidth rate region."""

from regen433.codes import CodeId, code_parameters, decode, encode, repair_decode, repair_encode

__all__ = [
    "CodeId",
    "code_parameters",
    "decode",
    "encode",
    "repair_decode",
    "repair_encode",
]

__version__ = "0.1.0"
