# Copyright 2026 the voranon authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Voronoi-guided geographic aggregation for k-anonymous microdata release."""

from ._core import (
    ClassTable,
    GapsModel,
    Point,
    Record,
    Schema,
    ValidationError,
    VoronoiDiagram,
    __version__,
    balanced_sites,
    build_class_table,
    dataset_entropy,
    gaps_cutoff,
    generate_data,
    initial_row_count,
    max_combinations,
    merge_tables,
    polygon_centroid,
    run_pipeline,
    site_count,
)

__all__ = [
    "ClassTable",
    "GapsModel",
    "Point",
    "Record",
    "Schema",
    "ValidationError",
    "VoronoiDiagram",
    "__version__",
    "balanced_sites",
    "build_class_table",
    "dataset_entropy",
    "gaps_cutoff",
    "generate_data",
    "initial_row_count",
    "max_combinations",
    "merge_tables",
    "polygon_centroid",
    "run_pipeline",
    "site_count",
]
