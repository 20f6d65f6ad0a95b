"""Label normalization: variant mapping, composites, analyzer conversion."""

import random

import pytest

from igtpivot import (
    CycleDetectedError,
    MorphKind,
    TableParseError,
    analyzer_to_gloss,
    default_table,
    load_table,
    loads_table,
    normalize_gloss_line,
    normalize_label,
    parse_analyzer_line,
    tokenize_gloss,
    unknown_analyzer_tags,
    unknown_labels,
)
from igtpivot.tables import DEFAULT_TABLE_TEXT

from gen_helpers import random_gloss_line
from golden_data import (
    ANALYZER_GOLD,
    NORMALIZATION_GOLD_NUMBER_FIRST,
    NORMALIZATION_GOLD_PERSON_FIRST,
)
from igtpivot.model import LemmaSide


def _normalize_text(text, table):
    gloss = tokenize_gloss(text, label_registry=table.label_registry())
    return normalize_gloss_line(gloss, table).render()


# --- table loading --------------------------------------------------------------


def test_default_table_variant_lookups():
    table = default_table()
    assert normalize_label("PRES", table) == ["PRS"]
    assert normalize_label("Past", table) == ["PST"]
    assert normalize_label("pst", table) == ["PST"]
    assert normalize_label("NOMZ", table) == ["NMLZ"]
    assert normalize_label("ADVL", table) == ["ADV"]


def test_default_table_analyzer_lookups():
    table = default_table()
    assert table.analyzer_map["A1sg"] == ("1", "SG")
    assert table.analyzer_map["P1pl"] == ("1", "PL", "POSS")
    assert table.analyzer_map["Reflex"] == ("REFL",)
    assert table.analyzer_map["NarrPart"] == ("EVID", "PTCP")
    assert table.analyzer_map["AorPart"] == ("AOR", "PTCP")
    assert table.analyzer_map["PresPart"] == ("PRS", "PTCP")
    assert table.analyzer_map["Prop"] == ()
    assert "Past" in table.verbal_tags
    assert "Prog1" in table.verbal_tags
    assert "Nom" not in table.verbal_tags


def test_cycle_detection():
    text = "[registry]\nX Y\n[variants]\nX\tY\nY\tX\n"
    with pytest.raises(CycleDetectedError):
        loads_table(text)


def test_self_mapping_is_a_fixed_point_not_a_cycle():
    text = "[registry]\nX\n[variants]\nX\tX\n"
    table = loads_table(text)
    assert normalize_label("X", table) == ["X"]


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("[nonsense]\n", "unknown section"),
        ("stray line\n", "before any"),
        ("[registry]\nA\n[variants]\nv\tB\n", "not in the registry"),
        ("[registry]\nA\n[variants]\nv\tA\nv\tA\n", "duplicate variant"),
        ("[composites]\n(?P<person>[123]\n", "bad composite regex"),
        ("[composites]\n(?P<p>[123])(?P<n>SG)\n", "named groups"),
        ("[registry]\nA\n[variants]\nnotab\n", "tab-separated"),
        ("[registry]\nA\n[analyzer]\nTag\tA\tweird\n", "unknown analyzer flag"),
    ],
)
def test_table_parse_errors(text, fragment):
    with pytest.raises(TableParseError, match=fragment):
        loads_table(text)


def test_table_parse_error_carries_line_number():
    try:
        loads_table("[registry]\nA\n[variants]\nbad line without tab\n")
    except TableParseError as exc:
        assert exc.line == 4
    else:
        pytest.fail("expected TableParseError")


def test_load_table_from_file(tmp_path):
    path = tmp_path / "table.txt"
    path.write_text(DEFAULT_TABLE_TEXT, encoding="utf-8")
    table = load_table(str(path))
    assert table == default_table()


# --- label normalization -----------------------------------------------------------


def test_composite_expansion_person_first_and_number_first():
    person_first = default_table()
    number_first = default_table(False)
    assert normalize_label("3SG", person_first) == ["3", "SG"]
    assert normalize_label("3SG", number_first) == ["SG", "3"]
    assert normalize_label("1pl", person_first) == ["1", "PL"]
    assert normalize_label("3S", person_first) == ["3", "SG"]
    assert normalize_label("2sing", person_first) == ["2", "SG"]


def test_registry_labels_are_fixed_points():
    table = default_table()
    for label in ["PST", "NOM", "SG", "3", "PROG"]:
        assert normalize_label(label, table) == [label]


def test_lowercase_registry_hit_uppercases():
    table = default_table()
    assert normalize_label("sg", table) == ["SG"]
    assert normalize_label("nom", table) == ["NOM"]


def test_unknown_label_passes_through_flagged():
    table = default_table()
    labels, known = table.lookup_label("Xyzzy")
    assert labels == ("Xyzzy",)
    assert not known


# --- gloss-line normalization ---------------------------------------------------------


def test_normalization_gold_number_first():
    table = default_table(False)
    for before, after in NORMALIZATION_GOLD_NUMBER_FIRST:
        assert _normalize_text(before, table) == after


def test_normalization_gold_person_first():
    table = default_table()
    for before, after in NORMALIZATION_GOLD_PERSON_FIRST:
        assert _normalize_text(before, table) == after


def test_normalization_is_idempotent_on_gold():
    for person_first in (True, False):
        table = default_table(person_first)
        for before, _ in NORMALIZATION_GOLD_NUMBER_FIRST:
            once = _normalize_text(before, table)
            assert _normalize_text(once, table) == once


def test_normalization_idempotent_and_count_preserving_random():
    rng = random.Random(777)
    table = default_table()
    for _ in range(100):
        line = random_gloss_line(rng, LemmaSide.TARGET, rng.randint(1, 5))
        normalized = normalize_gloss_line(line, table)
        assert len(normalized.tokens) == len(line.tokens)
        assert normalize_gloss_line(normalized, table) == normalized


def test_normalization_only_touches_labels():
    table = default_table()
    line = tokenize_gloss("Ahmet self-3.sg-ACC very admire-Progr.-Rep.Past.")
    normalized = normalize_gloss_line(line, table)
    for before, after in zip(line.tokens, normalized.tokens):
        before_lemmas = [m.text for m in before.morphs if m.kind is MorphKind.LEMMA]
        after_lemmas = [m.text for m in after.morphs if m.kind is MorphKind.LEMMA]
        assert before_lemmas == after_lemmas


def test_normalized_labels_are_registry_or_flagged():
    rng = random.Random(1234)
    table = default_table()
    for _ in range(50):
        line = random_gloss_line(rng, LemmaSide.TARGET, rng.randint(1, 5))
        normalized = normalize_gloss_line(line, table)
        unknown = set(unknown_labels(normalized, table))
        for token in normalized.tokens:
            for morph in token.morphs:
                if morph.kind is MorphKind.LABEL:
                    assert morph.text in table.registry or morph.text in unknown or \
                        table.lookup_label(morph.text)[1]


# --- analyzer conversion -----------------------------------------------------------


def test_analyzer_gold_lines():
    table = default_table()
    for before, after in ANALYZER_GOLD:
        gloss = analyzer_to_gloss(parse_analyzer_line(before), table)
        assert gloss.render() == after
        assert gloss.lemma_side is LemmaSide.SOURCE


def test_analyzer_root_restoration_is_exact_match_only():
    table = default_table()
    gloss = analyzer_to_gloss(parse_analyzer_line("Kadi+Nom kadi+Nom"), table)
    assert [t.render() for t in gloss.tokens] == ["Kadin.NOM", "kadi.NOM"]


def test_analyzer_bare_token_becomes_bare_lemma():
    table = default_table()
    gloss = analyzer_to_gloss(parse_analyzer_line("ne"), table)
    assert gloss.render() == "ne"
    assert gloss.tokens[0].morphs[0].kind is MorphKind.LEMMA


def test_analyzer_verbal_tags_attach_with_hyphen():
    table = default_table()
    gloss = analyzer_to_gloss(parse_analyzer_line("gör+Past+A3sg"), table)
    assert gloss.render() == "gör-PST.3.SG"


def test_analyzer_unknown_tag_passes_through_and_is_counted():
    table = default_table()
    tokens = parse_analyzer_line("word+Zorp+Nom")
    assert unknown_analyzer_tags(tokens, table) == ["Zorp"]
    gloss = analyzer_to_gloss(tokens, table)
    assert gloss.render() == "word.Zorp.NOM"


def test_analyzer_token_count_is_preserved():
    table = default_table()
    for before, _ in ANALYZER_GOLD:
        tokens = parse_analyzer_line(before)
        gloss = analyzer_to_gloss(tokens, table)
        assert len(gloss.tokens) == len(tokens)
