"""Acceptance suite: the artifact's exit criteria.

Each test prints one pass/fail line (run with ``pytest -s`` to see them all)
and enforces the stated tolerances and runtime bounds.
"""

import random
import sys
import time
from contextlib import contextmanager

import pytest

from igtpivot import (
    ParallelCorpus,
    TranslatorHandle,
    TranslatorKind,
    bleu,
    non_repetition,
    parse_record,
    run_pipeline,
    serialize_record,
    split_corpus,
    subj_verb_agreement,
    train_model1,
    translate,
    default_table,
    default_lexicon,
    load_dictionary,
    evaluate,
    EvalAnnotation,
)
from igtpivot.cli import main

import model1_oracle
from gen_helpers import random_parallel_corpus, random_record
from golden_data import (
    ANALYZER_GOLD,
    NORMALIZATION_GOLD_NUMBER_FIRST,
    PIVOT_DICTIONARY_TSV,
    SUBSTITUTION_GOLD,
    TURKISH_ANALYZER_FIXTURE,
)


@contextmanager
def criterion(number, description, budget_seconds=None):
    start = time.monotonic()
    try:
        yield
    except Exception:
        print(f"criterion {number} FAIL: {description}")
        raise
    elapsed = time.monotonic() - start
    if budget_seconds is not None:
        assert elapsed < budget_seconds, (
            f"criterion {number} exceeded its {budget_seconds}s budget: {elapsed:.2f}s"
        )
    print(f"criterion {number} PASS: {description} ({elapsed:.2f}s)")


def test_criterion_1_golden_normalization(tmp_path):
    desc = "golden normalization fixtures reproduce byte-exactly"
    with criterion(1, desc, budget_seconds=1.0):
        gloss_in = tmp_path / "gloss_raw.txt"
        gloss_out = tmp_path / "gloss_norm.txt"
        gloss_in.write_text(
            "".join(b + "\n" for b, _ in NORMALIZATION_GOLD_NUMBER_FIRST),
            encoding="utf-8",
        )
        code = main([
            "normalize", "--table", "default", "--number-first",
            "--in", str(gloss_in), "--out", str(gloss_out),
        ])
        assert code == 0
        expected = "".join(a + "\n" for _, a in NORMALIZATION_GOLD_NUMBER_FIRST)
        assert gloss_out.read_text(encoding="utf-8") == expected

        analyzer_in = tmp_path / "analyzer_raw.txt"
        analyzer_out = tmp_path / "analyzer_gloss.txt"
        analyzer_in.write_text(
            "".join(b + "\n" for b, _ in ANALYZER_GOLD), encoding="utf-8"
        )
        code = main([
            "parse-analyzer", "--table", "default",
            "--in", str(analyzer_in), "--out", str(analyzer_out),
        ])
        assert code == 0
        expected = "".join(a + "\n" for _, a in ANALYZER_GOLD)
        assert analyzer_out.read_text(encoding="utf-8") == expected


def test_criterion_2_pipeline_reproduces_staged_rows():
    desc = "pivot pipeline reproduces the staged normalization/substitution rows"
    with criterion(2, desc, budget_seconds=1.0):
        dictionary = load_dictionary(PIVOT_DICTIONARY_TSV)
        handle = TranslatorHandle(TranslatorKind.BASELINE_DETOKENIZE)
        _, report = run_pipeline(
            TURKISH_ANALYZER_FIXTURE, default_table(), dictionary, handle
        )
        normalized = [t.gloss_src for t in report.sentences]
        substituted = [t.gloss_tgt for t in report.sentences]
        assert normalized == [before for before, _ in SUBSTITUTION_GOLD]
        assert substituted == [after for _, after in SUBSTITUTION_GOLD]


def test_criterion_3_aligner_oracle_equivalence():
    desc = "aligner matches brute-force EM oracle; perplexity never increases"
    with criterion(3, desc, budget_seconds=10.0):
        toy = (
            (("das", "Haus"), ("the", "house")),
            (("das", "Buch"), ("the", "book")),
            (("ein", "Buch"), ("a", "book")),
        )
        lowered = [tuple(tuple(w.lower() for w in side) for side in pair) for pair in toy]
        oracle_history = model1_oracle.run(lowered, 10)
        for k in range(1, 11):
            table = train_model1(ParallelCorpus(toy), iterations=k)
            expected = oracle_history[k - 1]
            for key in set(table.probs) | set(expected):
                got = table.probs.get(key, 0.0)
                want = expected.get(key, 0.0)
                assert abs(got - want) <= 1e-9, f"iteration {k}: {key}"

        rng = random.Random(20250809)
        for _ in range(100):
            corpus = ParallelCorpus(
                tuple(random_parallel_corpus(rng, max_pairs=20, vocab=10))
            )
            table = train_model1(corpus, iterations=5, null_word=rng.random() < 0.5)
            history = table.perplexity_history
            for before, after in zip(history, history[1:]):
                assert after <= before + 1e-9


def test_criterion_4_bleu_correctness():
    desc = "BLEU matches hand values; identical corpora score 100; bleu1 >= bleu4"
    with criterion(4, desc, budget_seconds=10.0):
        clipped = bleu([["the", "the", "the", "the"]], [["the", "cat"]], max_n=1)
        assert clipped == pytest.approx(25.0, abs=1e-12)

        identical = [["the", "woman", "dances", "."], ["a", "b"]]
        assert bleu(identical, identical, max_n=4) == 100.0

        # the ordering property compares full four-order scores, so every
        # corpus gets at least one hypothesis long enough to carry 4-grams
        rng = random.Random(999)
        vocab = ["a", "b", "c", "d", "e", "f"]
        for _ in range(1000):
            n = rng.randint(1, 4)
            hyps = [[rng.choice(vocab) for _ in range(rng.randint(4, 8))]]
            hyps += [
                [rng.choice(vocab) for _ in range(rng.randint(0, 8))]
                for _ in range(n - 1)
            ]
            refs = [
                [rng.choice(vocab) for _ in range(rng.randint(1, 8))]
                for _ in range(n)
            ]
            assert bleu(hyps, refs, max_n=1) >= bleu(hyps, refs, max_n=4) - 1e-12


def test_criterion_5_metric_definitions():
    desc = "metric definitions: repetition, agreement rule, bounds, perfect corpus"
    with criterion(5, desc):
        assert non_repetition([["the", "book", "the", "book"]]) == pytest.approx(50.0)

        lexicon = default_lexicon()
        ann = EvalAnnotation(
            expected_verbs=frozenset({"talk"}), subject_features=(3, "SG")
        )
        assert subj_verb_agreement(["he", "talks"], ann, lexicon) == 1
        assert subj_verb_agreement(["he", "talked"], ann, lexicon) == 1
        assert subj_verb_agreement(["he", "talk"], ann, lexicon) == 0

        refs = [["the", "man", "saw", "the", "woman", "."]]
        anns = [
            EvalAnnotation(
                expected_nouns=frozenset({"man", "woman"}),
                expected_verbs=frozenset({"see"}),
                subject_features=(3, "SG"),
                expected_tense="PST",
            )
        ]
        report = evaluate(refs, refs, anns)
        for attr in ("noun_match", "verb_match", "subj_verb_agreement", "tense_match"):
            assert getattr(report, attr) == pytest.approx(100.0)
        assert report.bleu4 == 100.0

        rng = random.Random(5)
        vocab = ["the", "man", "saw", "talks", "will", "dance", "."]
        for _ in range(100):
            n = rng.randint(1, 4)
            hyps = [[rng.choice(vocab) for _ in range(rng.randint(0, 6))] for _ in range(n)]
            refs = [[rng.choice(vocab) for _ in range(rng.randint(1, 6))] for _ in range(n)]
            anns = [
                EvalAnnotation(
                    expected_nouns=frozenset({rng.choice(["man", "film"])}),
                    expected_verbs=frozenset({rng.choice(["see", "talk"])}),
                    subject_features=(3, "SG"),
                    expected_tense=rng.choice(["PST", "PRS", "FUT"]),
                )
                for _ in range(n)
            ]
            report = evaluate(hyps, refs, anns)
            for attr in (
                "noun_match", "verb_match", "subj_verb_agreement",
                "tense_match", "non_repetition", "bleu4", "bleu1",
            ):
                value = getattr(report, attr)
                assert value is not None
                assert 0.0 <= value <= 100.0


def test_criterion_6_round_trip_and_partition():
    desc = "1000 random records round-trip; splits partition deterministically"
    with criterion(6, desc):
        rng = random.Random(123456)
        records = [random_record(rng, i) for i in range(1000)]
        for record in records:
            line = serialize_record(record)
            assert parse_record(line) == record

        split_a = split_corpus(records, (0.8, 0.1, 0.1), seed=31)
        split_b = split_corpus(records, (0.8, 0.1, 0.1), seed=31)
        assert split_a == split_b
        assert (len(split_a.train), len(split_a.validation), len(split_a.test)) == (
            800, 100, 100,
        )
        ids = [r.id for part in (split_a.train, split_a.validation, split_a.test) for r in part]
        assert sorted(ids) == sorted(r.id for r in records)


def test_criterion_7_full_scale_results_out_of_reach_by_design():
    desc = "full-scale scores need trained models; plug-in protocol works instead"
    with criterion(7, desc):
        print(
            "criterion 7 NOTE: the published large-scale scores (corpus BLEU near "
            "26 and accuracy gains such as +44 points in subject-verb agreement) "
            "require training neural translation systems on the full multilingual "
            "gloss corpora plus a hand-evaluation pass; they are not reproducible "
            "at desk scale. This artifact substitutes the oracle and property "
            "suites above and exposes the external-translator line protocol so a "
            "trained model can be plugged in to attempt them."
        )
        # the plug-in surface exists and honors the protocol
        echo = TranslatorHandle(
            TranslatorKind.EXTERNAL,
            command=f"{sys.executable} -c \"import sys; sys.stdout.write(sys.stdin.read())\"",
            timeout=30,
        )
        lines = ["tur Woman.NOM dance do-AOR.3.SG .", "blu 3SG always praise 3SG ."]
        assert translate(lines, echo) == lines


def test_criterion_8_end_to_end_smoke():
    desc = "pivot smoke run: zero errors, zero OOV, token counts conserved"
    with criterion(8, desc):
        dictionary = load_dictionary(PIVOT_DICTIONARY_TSV)
        handle = TranslatorHandle(TranslatorKind.BASELINE_DETOKENIZE)
        targets, report = run_pipeline(
            TURKISH_ANALYZER_FIXTURE, default_table(), dictionary, handle
        )
        assert targets == ["Woman dance be .", "Man woman see ."]
        assert report.oov_lemmas == 0
        assert report.unknown_labels == 0
        assert report.n_sentences == 2
        assert (
            report.analyzer_tokens
            == report.gloss_src_tokens
            == report.gloss_tgt_tokens
            == 8
        )
        assert len(report.sentences) == 2
        assert all(t.target is not None for t in report.sentences)
