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

import dner
import pytest

MUSCLE = "muscle pain and fatigue\n0,2 ADR|0,1;3,4 ADR\n"


def test_parse_and_write_round_trip():
    corpus = dner.parse_inline(MUSCLE)
    assert len(corpus) == 1
    s = corpus[0]
    assert s.tokens == ["muscle", "pain", "and", "fatigue"]
    assert sorted(m.fragments for m in s.mentions) == [[(0, 1), (3, 4)], [(0, 2)]]
    again = dner.parse_inline(dner.write_inline(corpus))
    assert again[0].mentions == s.mentions


def test_malformed_input_raises_value_error():
    with pytest.raises(ValueError):
        dner.parse_inline("a b\n0,9 ADR\n")


def test_stats():
    stats = dner.compute_stats(dner.parse_inline(MUSCLE))
    assert stats["mentions"] == 2
    assert stats["disc_mentions"] == 1


def test_oracle_decodes_back_to_gold():
    s = dner.parse_inline(MUSCLE)[0]
    actions, uncovered = dner.oracle(s)
    assert uncovered == []
    assert actions[0] == "SHIFT"
    decoded = dner.decode_actions(actions, len(s))
    assert set(decoded) == set(s.mentions)


def test_biohd_tags():
    s = dner.parse_inline(MUSCLE)[0]
    tags = dner.encode_biohd(s)
    assert tags == ["BH-ADR", "I-ADR", "O", "BD-ADR"]
    assert set(dner.decode_biohd(tags)) == set(s.mentions)


def test_mention_constructor_and_flatten():
    m = dner.Mention("ADR", [(3, 4), (0, 1)])
    assert m.fragments == [(0, 1), (3, 4)]
    assert m.is_discontinuous
    flat = dner.flatten(dner.parse_inline(MUSCLE))
    assert all(not x.is_discontinuous for x in flat[0].mentions)


def test_evaluate_perfect():
    corpus = dner.parse_inline(MUSCLE)
    report = dner.evaluate(corpus, corpus)
    assert report["overall"]["f1"] == 1.0


def test_train_predict_and_checkpoint(tmp_path):
    data = dner.generate_templated(20, seed=3)
    config = dner.ScorerConfig()
    config.epochs = 2
    config.word_dim = config.hidden_dim = config.stack_dim = 8
    model, best_epoch, losses = dner.train(data, None, config)
    assert len(losses) == 2
    assert 1 <= best_epoch <= 2
    pred = model.predict_corpus(data)
    assert len(pred) == len(data)
    path = str(tmp_path / "m.bin")
    model.save(path)
    loaded = dner.load_model(path)
    assert loaded.to_bytes() == model.to_bytes()
    assert [m.fragments for m in loaded.predict(data[0])] == [
        m.fragments for m in model.predict(data[0])
    ]
