"""
Box file (JSON) serialization

{"provenance": str,
 "alice_first": {"00": [[p00, p01], [p10, p11]], "01": ..., "10": ..., "11": ...},
 "bob_first": same shape}
"""
import json
from pathlib import Path
from typing import Dict, List, Union
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator
from src.config.constants import INPUT_KEYS, BOX_LOAD_TOLERANCE
from src.domain.entities.box import Box, JointDistribution
from src.error_trace.exceptions import BoxFormatError, ValidationError
from src.utilities.logger import get_logger

logger = get_logger(__name__)

Block = List[List[float]]


class BoxFile(BaseModel):
    """Box file document"""

    provenance: str = Field("", description="How the tables arose")
    alice_first: Dict[str, Block]
    bob_first: Dict[str, Block]

    @field_validator("alice_first", "bob_first")
    @classmethod
    def validate_tables(cls, tables: Dict[str, Block]) -> Dict[str, Block]:
        """All four 2x2 blocks present, each summing to 1"""
        if sorted(tables) != list(INPUT_KEYS):
            raise ValueError(f"expected keys {list(INPUT_KEYS)}, got {sorted(tables)}")
        for key, block in tables.items():
            if len(block) != 2 or any(len(row) != 2 for row in block):
                raise ValueError(f"block {key} must be 2x2")
            total = sum(sum(row) for row in block)
            if abs(total - 1.0) > BOX_LOAD_TOLERANCE:
                raise ValueError(f"block {key} sums to {total!r}")
        return tables

    def to_box(self) -> Box:
        def convert(tables: Dict[str, Block]):
            return {
                (int(key[0]), int(key[1])): JointDistribution(block, tolerance=BOX_LOAD_TOLERANCE)
                for key, block in tables.items()
            }

        return Box(
            alice_first=convert(self.alice_first),
            bob_first=convert(self.bob_first),
            provenance=self.provenance
        )

    @classmethod
    def from_box(cls, box: Box) -> "BoxFile":
        return cls(**box.to_dict())


def dump_box(box: Box, path: Union[str, Path]) -> Path:
    """Write a box file; floats are written in shortest round-trip form"""
    target = Path(path)
    document = BoxFile.from_box(box).model_dump()
    target.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote box to {target}")
    return target


def load_box(path: Union[str, Path]) -> Box:
    """
    Read and validate a box file

    Raises:
        BoxFormatError: If the file is unreadable, not JSON or malformed
    """
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise BoxFormatError(f"Cannot read box file: {e}", source=source)
    try:
        return BoxFile.model_validate_json(text).to_box()
    except PydanticValidationError as e:
        raise BoxFormatError(f"Malformed box file: {e.error_count()} error(s): {e.errors()[0]['msg']}", source=source)
    except ValidationError as e:
        raise BoxFormatError(f"Invalid box tables: {e.message}", source=source)
