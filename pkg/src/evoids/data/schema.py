# Copyright 2025 CrownOps Engineering
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Column registries for the supported flow-record layouts.

Each `DatasetSchema` lists the header a CICFlowMeter export of that corpus is
expected to carry, the identifier columns removed before modelling, and any
optional columns that appear in only some of the corpus files. Header names
are compared after stripping surrounding whitespace because CIC-DDoS2019
exports pad most names with a leading space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final

from evoids.core.model_types import DatasetKind

__all__ = [
    "CIC_DDOS2019_COLUMNS",
    "CSE_CIC_IDS2018_COLUMNS",
    "LABEL_COLUMN",
    "SCHEMAS",
    "DatasetSchema",
    "normalise_header",
    "schema_for",
]

LABEL_COLUMN: Final[str] = "Label"

CIC_DDOS2019_COLUMNS: Final[tuple[str, ...]] = (
    "Unnamed: 0",
    "Flow ID",
    "Source IP",
    "Source Port",
    "Destination IP",
    "Destination Port",
    "Protocol",
    "Timestamp",
    "Flow Duration",
    "Total Fwd Packets",
    "Total Backward Packets",
    "Total Length of Fwd Packets",
    "Total Length of Bwd Packets",
    "Fwd Packet Length Max",
    "Fwd Packet Length Min",
    "Fwd Packet Length Mean",
    "Fwd Packet Length Std",
    "Bwd Packet Length Max",
    "Bwd Packet Length Min",
    "Bwd Packet Length Mean",
    "Bwd Packet Length Std",
    "Flow Bytes/s",
    "Flow Packets/s",
    "Flow IAT Mean",
    "Flow IAT Std",
    "Flow IAT Max",
    "Flow IAT Min",
    "Fwd IAT Total",
    "Fwd IAT Mean",
    "Fwd IAT Std",
    "Fwd IAT Max",
    "Fwd IAT Min",
    "Bwd IAT Total",
    "Bwd IAT Mean",
    "Bwd IAT Std",
    "Bwd IAT Max",
    "Bwd IAT Min",
    "Fwd PSH Flags",
    "Bwd PSH Flags",
    "Fwd URG Flags",
    "Bwd URG Flags",
    "Fwd Header Length",
    "Bwd Header Length",
    "Fwd Packets/s",
    "Bwd Packets/s",
    "Min Packet Length",
    "Max Packet Length",
    "Packet Length Mean",
    "Packet Length Std",
    "Packet Length Variance",
    "FIN Flag Count",
    "SYN Flag Count",
    "RST Flag Count",
    "PSH Flag Count",
    "ACK Flag Count",
    "URG Flag Count",
    "CWE Flag Count",
    "ECE Flag Count",
    "Down/Up Ratio",
    "Average Packet Size",
    "Avg Fwd Segment Size",
    "Avg Bwd Segment Size",
    "Fwd Header Length.1",
    "Fwd Avg Bytes/Bulk",
    "Fwd Avg Packets/Bulk",
    "Fwd Avg Bulk Rate",
    "Bwd Avg Bytes/Bulk",
    "Bwd Avg Packets/Bulk",
    "Bwd Avg Bulk Rate",
    "Subflow Fwd Packets",
    "Subflow Fwd Bytes",
    "Subflow Bwd Packets",
    "Subflow Bwd Bytes",
    "Init_Win_bytes_forward",
    "Init_Win_bytes_backward",
    "act_data_pkt_fwd",
    "min_seg_size_forward",
    "Active Mean",
    "Active Std",
    "Active Max",
    "Active Min",
    "Idle Mean",
    "Idle Std",
    "Idle Max",
    "Idle Min",
    "SimilarHTTP",
    "Inbound",
    "Label",
)

CSE_CIC_IDS2018_COLUMNS: Final[tuple[str, ...]] = (
    "Dst Port",
    "Protocol",
    "Timestamp",
    "Flow Duration",
    "Tot Fwd Pkts",
    "Tot Bwd Pkts",
    "TotLen Fwd Pkts",
    "TotLen Bwd Pkts",
    "Fwd Pkt Len Max",
    "Fwd Pkt Len Min",
    "Fwd Pkt Len Mean",
    "Fwd Pkt Len Std",
    "Bwd Pkt Len Max",
    "Bwd Pkt Len Min",
    "Bwd Pkt Len Mean",
    "Bwd Pkt Len Std",
    "Flow Byts/s",
    "Flow Pkts/s",
    "Flow IAT Mean",
    "Flow IAT Std",
    "Flow IAT Max",
    "Flow IAT Min",
    "Fwd IAT Tot",
    "Fwd IAT Mean",
    "Fwd IAT Std",
    "Fwd IAT Max",
    "Fwd IAT Min",
    "Bwd IAT Tot",
    "Bwd IAT Mean",
    "Bwd IAT Std",
    "Bwd IAT Max",
    "Bwd IAT Min",
    "Fwd PSH Flags",
    "Bwd PSH Flags",
    "Fwd URG Flags",
    "Bwd URG Flags",
    "Fwd Header Len",
    "Bwd Header Len",
    "Fwd Pkts/s",
    "Bwd Pkts/s",
    "Pkt Len Min",
    "Pkt Len Max",
    "Pkt Len Mean",
    "Pkt Len Std",
    "Pkt Len Var",
    "FIN Flag Cnt",
    "SYN Flag Cnt",
    "RST Flag Cnt",
    "PSH Flag Cnt",
    "ACK Flag Cnt",
    "URG Flag Cnt",
    "CWE Flag Count",
    "ECE Flag Cnt",
    "Down/Up Ratio",
    "Pkt Size Avg",
    "Fwd Seg Size Avg",
    "Bwd Seg Size Avg",
    "Fwd Byts/b Avg",
    "Fwd Pkts/b Avg",
    "Fwd Blk Rate Avg",
    "Bwd Byts/b Avg",
    "Bwd Pkts/b Avg",
    "Bwd Blk Rate Avg",
    "Subflow Fwd Pkts",
    "Subflow Fwd Byts",
    "Subflow Bwd Pkts",
    "Subflow Bwd Byts",
    "Init Fwd Win Byts",
    "Init Bwd Win Byts",
    "Fwd Act Data Pkts",
    "Fwd Seg Size Min",
    "Active Mean",
    "Active Std",
    "Active Max",
    "Active Min",
    "Idle Mean",
    "Idle Std",
    "Idle Max",
    "Idle Min",
    "Label",
)

# Present only in the Thursday-20-02-2018 file of CSE-CIC-IDS2018.
_IDS2018_OPTIONAL: Final[tuple[str, ...]] = ("Flow ID", "Src IP", "Src Port", "Dst IP")


def normalise_header(name: str) -> str:
    """Strip surrounding whitespace (and a UTF-8 BOM) from a header cell."""
    return name.replace("\ufeff", "").strip()


@dataclass(frozen=True, slots=True)
class DatasetSchema:
    """Expected header and column policy for one dataset kind.

    Attributes:
        kind: Dataset kind the schema describes.
        columns: Expected columns in file order; empty for the generic kind.
        drop: Identifier columns removed before modelling.
        optional: Columns accepted in addition to `columns`.
        label: Name of the label column.
    """

    kind: DatasetKind
    columns: tuple[str, ...]
    drop: tuple[str, ...]
    optional: tuple[str, ...] = ()
    label: str = LABEL_COLUMN

    @property
    def strict(self) -> bool:
        """Whether the header must match the registry exactly."""
        return bool(self.columns)

    @property
    def expected_width(self) -> int:
        """Column count of a conforming file without optional columns."""
        return len(self.columns)

    def missing(self, header: tuple[str, ...]) -> tuple[str, ...]:
        """Return expected columns absent from `header`, in registry order."""
        present = set(header)
        required = self.columns or (self.label,)
        return tuple(name for name in required if name not in present)

    def unexpected(self, header: tuple[str, ...]) -> tuple[str, ...]:
        """Return columns of `header` the registry does not know, in header order."""
        if not self.strict:
            return ()
        known = set(self.columns) | set(self.optional)
        return tuple(name for name in header if name not in known)


SCHEMAS: Final[dict[DatasetKind, DatasetSchema]] = {
    DatasetKind.CIC_DDOS2019: DatasetSchema(
        kind=DatasetKind.CIC_DDOS2019,
        columns=CIC_DDOS2019_COLUMNS,
        drop=("Unnamed: 0", "Flow ID", "Source IP", "Destination IP", "Timestamp", "SimilarHTTP"),
    ),
    DatasetKind.CSE_CIC_IDS2018: DatasetSchema(
        kind=DatasetKind.CSE_CIC_IDS2018,
        columns=CSE_CIC_IDS2018_COLUMNS,
        drop=("Timestamp", *_IDS2018_OPTIONAL),
        optional=_IDS2018_OPTIONAL,
    ),
    DatasetKind.GENERIC: DatasetSchema(kind=DatasetKind.GENERIC, columns=(), drop=()),
}


def schema_for(kind: DatasetKind | str) -> DatasetSchema:
    """Return the registered schema for `kind`.

    Raises:
        ValueError: If `kind` is not a known dataset kind name.
    """
    key = kind if isinstance(kind, DatasetKind) else DatasetKind.from_str(kind)
    return SCHEMAS[key]
