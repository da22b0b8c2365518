# Copyright 2026 The dner Authors.
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

"""Discontinuous mention recognition with a transition-based parser."""

import json

from dner._dner import (
    Corpus,
    Error,
    Mention,
    Model,
    ParseError,
    ScorerConfig,
    Sentence,
    compute_stats,
    decode_actions,
    decode_biohd,
    encode_bio,
    encode_biohd,
    evaluate_json,
    flatten,
    generate_templated,
    load_model,
    model_from_bytes,
    oracle,
    parse_inline,
    train,
    write_inline,
)


def evaluate(gold, pred):
    """Strict, disc-only, per-category and per-length scores as a dict."""
    return json.loads(evaluate_json(gold, pred))


__all__ = [
    "Corpus",
    "Error",
    "Mention",
    "Model",
    "ParseError",
    "ScorerConfig",
    "Sentence",
    "compute_stats",
    "decode_actions",
    "decode_biohd",
    "encode_bio",
    "encode_biohd",
    "evaluate",
    "flatten",
    "generate_templated",
    "load_model",
    "model_from_bytes",
    "oracle",
    "parse_inline",
    "train",
    "write_inline",
]
