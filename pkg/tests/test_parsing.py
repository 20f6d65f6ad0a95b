"""Gloss tokenizer, ODIN block parser, ToolBox parser, analyzer-line parser."""

import random

import pytest

from igtpivot import (
    AnalyzerToken,
    BlockShapeError,
    EmptyLineError,
    LanguageTag,
    LemmaSide,
    MalformedTokenError,
    MorphKind,
    RawIgtBlock,
    TokenCountMismatchError,
    block_to_record,
    parse_analyzer_line,
    parse_odin_blocks,
    parse_toolbox,
    tokenize_gloss,
)

from gen_helpers import random_gloss_line
from golden_data import IGT_EXAMPLES


def kinds(token):
    return [m.kind for m in token.morphs]


def texts(token):
    return [m.text for m in token.morphs]


# --- tokenizer ----------------------------------------------------------------


def test_tokenizer_splits_turkish_sequence_line():
    line = tokenize_gloss("Woman.NOM dance do-AOR.3.SG.")
    rendered = [t.render() for t in line.tokens]
    assert rendered == ["Woman.NOM", "dance", "do-AOR.3.SG", "."]
    woman, dance, do, period = line.tokens
    assert texts(woman) == ["Woman", "NOM"]
    assert kinds(woman) == [MorphKind.LEMMA, MorphKind.LABEL]
    assert texts(dance) == ["dance"]
    assert kinds(dance) == [MorphKind.LEMMA]
    assert texts(do) == ["do", "AOR", "3", "SG"]
    assert kinds(do) == [MorphKind.LEMMA] + [MorphKind.LABEL] * 3
    assert period.is_punctuation


def test_tokenizer_single_word():
    line = tokenize_gloss("hello")
    assert len(line.tokens) == 1
    assert kinds(line.tokens[0]) == [MorphKind.LEMMA]


def test_tokenizer_classifies_uppercase_word_initial_as_label():
    line = tokenize_gloss("3SG always praise 3SG.")
    first = line.tokens[0]
    assert kinds(first) == [MorphKind.LABEL]
    assert texts(first) == ["3SG"]


# hand-tokenized expectations: (token texts, morph texts per token)
HAND_TOKENIZED = {
    "I saw he.DAT the film.ACC like.": [
        ["I"], ["saw"], ["he", "DAT"], ["the"], ["film", "ACC"], ["like"], ["."],
    ],
    "3SG always praise 3SG.": [
        ["3SG"], ["always"], ["praise"], ["3SG"], ["."],
    ],
    "live(at)-3PL on/over-ADV IC.hill(y)-0.PLtree-NA.PL IC.it is-3PL timber.": [
        ["live(at)", "3PL"],
        ["on/over", "ADV"],
        ["IC", "hill(y)", "0", "PLtree", "NA", "PL"],
        ["IC", "it"],
        ["is", "3PL"],
        ["timber"],
        ["."],
    ],
}


@pytest.mark.parametrize("gloss", list(HAND_TOKENIZED))
def test_tokenizer_against_hand_tokenized_oracle(gloss):
    line = tokenize_gloss(gloss)
    assert [texts(t) for t in line.tokens] == HAND_TOKENIZED[gloss]


@pytest.mark.parametrize("gloss", [example[1] for example in IGT_EXAMPLES])
def test_tokenizer_round_trips_example_glosses(gloss):
    line = tokenize_gloss(gloss)
    rendered = line.render()
    assert rendered == " ".join(gloss.split())
    assert tokenize_gloss(rendered) == line


def test_tokenizer_round_trip_random_lines():
    rng = random.Random(5150)
    for _ in range(200):
        line = random_gloss_line(rng, LemmaSide.TARGET, rng.randint(1, 6))
        rendered = line.render()
        assert tokenize_gloss(rendered) == line


def test_tokenizer_keeps_unsplittable_delimiters_opaque():
    line = tokenize_gloss("admire-Progr.-Rep.Past.")
    token = line.tokens[0]
    assert texts(token) == ["admire", "Progr.", "Rep", "Past"]
    assert [m.opaque for m in token.morphs] == [False, True, False, False]
    assert line.render() == "admire-Progr.-Rep.Past."


def test_tokenizer_rejects_empty_line():
    with pytest.raises(EmptyLineError):
        tokenize_gloss("   ")


def test_tokenizer_respects_custom_registry():
    line = tokenize_gloss("walk-kap", label_registry=frozenset({"kap"}))
    assert kinds(line.tokens[0]) == [MorphKind.LEMMA, MorphKind.LABEL]
    line2 = tokenize_gloss("walk-kap", label_registry=frozenset())
    assert kinds(line2.tokens[0]) == [MorphKind.LEMMA, MorphKind.LEMMA]


# --- ODIN blocks ----------------------------------------------------------------


def test_blocks_split_on_blank_lines():
    text = "a b\nc d\n\ne f\ng h\n"
    blocks, warnings = parse_odin_blocks(text)
    assert len(blocks) == 2
    assert not warnings
    assert blocks[0].lines == ("a b", "c d")


def test_overlong_run_is_warned_with_line_number():
    text = "1\n2\n3\n4\n5\n\nok line\nsecond\n"
    blocks, warnings = parse_odin_blocks(text)
    assert len(blocks) == 1
    assert len(warnings) == 1
    assert warnings[0].code == "BLOCK_SHAPE"
    assert warnings[0].line == 1
    assert "5 line(s)" in warnings[0].message


def test_single_line_run_is_warned():
    blocks, warnings = parse_odin_blocks("lonely\n\na\nb\n")
    assert len(blocks) == 1
    assert len(warnings) == 1


def test_every_line_lands_in_a_block_or_warning():
    text = "a\nb\n\nc\n\nd\ne\nf\ng\nh\ni\n\nj\nk\nl\n"
    blocks, warnings = parse_odin_blocks(text)
    lines_in_blocks = sum(len(b.lines) for b in blocks)
    # reconstruct warned run lengths from the messages
    warned = sum(int(w.message.split(" line(s)")[0].split()[-1]) for w in warnings)
    non_blank = sum(1 for line in text.splitlines() if line.strip())
    assert lines_in_blocks + warned == non_blank


def test_example_file_parses_into_three_blocks():
    text = "\n\n".join("\n".join(example[:3]) for example in IGT_EXAMPLES) + "\n"
    blocks, warnings = parse_odin_blocks(text)
    assert len(blocks) == 3
    assert not warnings
    # for the German and Hmong examples the gloss has exactly one token per
    # source word; the Arapaho field data is noisier (merged words), so its
    # counts genuinely differ
    for block in blocks[:2]:
        source_tokens = tokenize_gloss(block.lines[0])
        gloss_tokens = tokenize_gloss(block.lines[1])
        assert len(source_tokens.tokens) == len(gloss_tokens.tokens)


def test_block_shape_validation():
    with pytest.raises(BlockShapeError):
        RawIgtBlock(lines=("only",))
    with pytest.raises(BlockShapeError):
        RawIgtBlock(lines=("1", "2", "3", "4", "5"))


def test_block_to_record_maps_three_lines():
    source, gloss, target, lang = IGT_EXAMPLES[1]
    block = RawIgtBlock(lines=(source, gloss, target))
    record = block_to_record(block, lang, record_id="hmong-1")
    assert record.lang == LanguageTag("blu")
    assert record.source_text == source
    assert record.gloss_src is None
    assert record.gloss_tgt is not None
    assert record.gloss_tgt.render() == gloss
    assert record.target_text == target


def test_block_to_record_maps_four_lines():
    block = RawIgtBlock(
        lines=("Kadin dans ediyor.", "Kadin.NOM dance ediyor-AOR.3.SG.",
               "Woman.NOM dance do-AOR.3.SG.", "The woman dances.")
    )
    record = block_to_record(block, "tur")
    assert record.gloss_src is not None
    assert record.gloss_src.lemma_side is LemmaSide.SOURCE
    assert record.gloss_tgt.lemma_side is LemmaSide.TARGET


def test_block_to_record_rejects_gloss_count_mismatch():
    block = RawIgtBlock(
        lines=("src src src", "a b c d", "a b c d e", "the target")
    )
    with pytest.raises(TokenCountMismatchError):
        block_to_record(block, "und")


def test_block_to_record_rejects_two_line_block():
    with pytest.raises(BlockShapeError):
        block_to_record(RawIgtBlock(lines=("a", "b")), "und")


# --- ToolBox ---------------------------------------------------------------------


TOOLBOX_TEXT = """\
\\t Nwg yeej qhuas nwg.
\\m nwg yeej qhuas nwg
\\g 3SG always praise 3SG.
\\f He always praises himself.

\\t Kadin dans ediyor.
\\g Woman.NOM dance
\\g do-AOR.3.SG.
\\f The woman dances.
"""


def test_toolbox_two_records_with_default_map():
    records, warnings = parse_toolbox(TOOLBOX_TEXT, lang="blu")
    assert len(records) == 2
    assert not warnings
    assert records[0].source_text == "Nwg yeej qhuas nwg."
    assert records[0].gloss_tgt.render() == "3SG always praise 3SG."
    assert records[0].target_text == "He always praises himself."
    # repeated \g markers concatenate
    assert records[1].gloss_tgt.render() == "Woman.NOM dance do-AOR.3.SG."


def test_toolbox_continuation_lines_fold():
    text = "\\t first part\n   continued here\n\\f the target\n"
    records, _ = parse_toolbox(text, lang="und")
    assert records[0].source_text == "first part continued here"


def test_toolbox_unknown_marker_warns():
    text = "\\t source\n\\zz mystery\n\\f target\n"
    records, warnings = parse_toolbox(text, lang="und")
    assert len(records) == 1
    assert any(w.code == "UNKNOWN_MARKER" for w in warnings)


def test_toolbox_empty_record_skipped_with_warning():
    text = "\\t\n\\g\n\\f\n\n\\t real\n\\f target\n"
    records, warnings = parse_toolbox(text, lang="und")
    assert len(records) == 1
    assert any(w.code == "EMPTY_RECORD" for w in warnings)


def test_toolbox_matches_block_semantics_on_arapaho_example():
    source, gloss, target, lang = IGT_EXAMPLES[2]
    toolbox = f"\\t {source}\n\\g {gloss}\n\\f {target}\n"
    records, warnings = parse_toolbox(toolbox, lang=lang, id_prefix="x")
    assert not warnings
    block_record = block_to_record(
        RawIgtBlock(lines=(source, gloss, target)), lang, record_id="x-0001"
    )
    assert records[0] == block_record


def test_toolbox_custom_map_and_gloss_src():
    text = "\\ref 001\n\\tx source text\n\\ga src.GLOSS ok\n\\ge tgt.GLOSS ok\n\\ft target\n"
    field_map = {
        "ref": "ignore",
        "tx": "source",
        "ga": "gloss_src",
        "ge": "gloss_tgt",
        "ft": "target",
    }
    records, warnings = parse_toolbox(text, field_map, lang="und")
    assert not warnings
    assert records[0].gloss_src is not None
    assert records[0].gloss_src.render() == "src.GLOSS ok"


def test_toolbox_rejects_unknown_role():
    with pytest.raises(ValueError):
        parse_toolbox("\\t x\n", {"t": "sideways"}, lang="und")


# --- analyzer output ---------------------------------------------------------------


def test_analyzer_line_splits_tags_and_final_punctuation():
    tokens = parse_analyzer_line(
        "Kadi+A3sg+Pnon+Nom dans+A3sg+Pnon+Nom et+Prog1+A3sg."
    )
    assert len(tokens) == 4
    assert tokens[0] == AnalyzerToken("Kadi", ("A3sg", "Pnon", "Nom"))
    assert tokens[2] == AnalyzerToken("et", ("Prog1", "A3sg"))
    assert tokens[3] == AnalyzerToken(".")
    assert tokens[3].is_punctuation


def test_analyzer_token_without_tags():
    tokens = parse_analyzer_line("ne")
    assert tokens == [AnalyzerToken("ne", ())]


def test_analyzer_rejects_empty_surface():
    with pytest.raises(MalformedTokenError):
        parse_analyzer_line("+Nom")


def test_analyzer_rejects_empty_tag():
    with pytest.raises(MalformedTokenError):
        parse_analyzer_line("kadi++Nom")


def test_analyzer_punctuation_token_must_not_carry_tags():
    with pytest.raises(MalformedTokenError):
        AnalyzerToken(".", ("Nom",))


def test_analyzer_segments_rejoin_to_input():
    line = "Ali+A3sg+Pnon+Nom hakkinda+A3sg+P3sg+Loc ne düünüyor+A3sg+Pnon+Nom?"
    tokens = parse_analyzer_line(line)
    rebuilt = []
    for token in tokens:
        if token.is_punctuation and rebuilt:
            rebuilt[-1] += token.surface
        else:
            rebuilt.append(token.render())
    assert " ".join(rebuilt) == line


def test_analyzer_empty_line_gives_no_tokens():
    assert parse_analyzer_line("") == []
    assert parse_analyzer_line("   ") == []
