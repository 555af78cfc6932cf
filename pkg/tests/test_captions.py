"""Caption templates and quality-trigger assignment."""

import pytest

from alphamotion.captions import (
    EDGE_TRIGGER,
    MOTION_TRIGGER,
    SOURCE_TRIGGERS,
    SOURCES,
    CaptionRecord,
    compose_caption,
    inference_prompt,
    ingested_caption,
    motion_phrase,
)
from alphamotion.motion import MotionSpec


class TestSourceTriggers:
    def test_mapping(self):
        assert SOURCE_TRIGGERS["synthetic"] == (EDGE_TRIGGER,)
        assert SOURCE_TRIGGERS["foreground"] == (MOTION_TRIGGER,)
        assert SOURCE_TRIGGERS["game_effect"] == (EDGE_TRIGGER, MOTION_TRIGGER)
        assert SOURCE_TRIGGERS["iterated"] == (EDGE_TRIGGER, MOTION_TRIGGER)

    def test_every_source_covered(self):
        assert set(SOURCE_TRIGGERS) == set(SOURCES)


class TestMotionPhrase:
    def test_full_spec(self):
        spec = MotionSpec(direction="NE", velocity=2.0, scale_mode="grow",
                          scale_rate=1.05, rotation_rate=4.0)
        assert motion_phrase(spec) == (
            "moving up and to the right, growing larger, rotating"
        )

    def test_static_spec_has_no_direction_word(self):
        assert motion_phrase(MotionSpec()) == "at constant size"

    def test_shrink_without_rotation(self):
        spec = MotionSpec(direction="S", velocity=1.0, scale_mode="shrink", scale_rate=0.95)
        assert motion_phrase(spec) == "moving down, shrinking"


class TestComposeCaption:
    def test_synthetic_full_text(self):
        spec = MotionSpec(direction="E", velocity=3.0)
        record = compose_caption("fireball", spec, "synthetic")
        assert record.full_text == f"fireball moving right, at constant size, {EDGE_TRIGGER}"
        assert record.triggers == (EDGE_TRIGGER,)
        assert record.source == "synthetic"

    def test_game_effect_carries_both_triggers(self):
        record = compose_caption("smoke", MotionSpec(), "game_effect")
        assert record.full_text.endswith(f"{EDGE_TRIGGER} {MOTION_TRIGGER}")

    def test_empty_class_rejected(self):
        with pytest.raises(ValueError):
            compose_caption("", MotionSpec(), "synthetic")

    def test_unknown_source_rejected(self):
        with pytest.raises(ValueError):
            compose_caption("x", MotionSpec(), "movie")

    def test_record_round_trip(self):
        record = compose_caption("spark", MotionSpec(direction="W", velocity=1.0), "iterated")
        assert CaptionRecord.from_record(record.to_record()) == record


class TestCaptionRecordValidation:
    def test_component_missing_from_text_rejected(self):
        with pytest.raises(ValueError):
            CaptionRecord(
                class_name="orb",
                motion_phrase="moving right",
                triggers=(EDGE_TRIGGER,),
                source="synthetic",
                full_text="something else entirely",
            )

    def test_duplicated_component_rejected(self):
        with pytest.raises(ValueError):
            CaptionRecord(
                class_name="orb",
                motion_phrase="",
                triggers=(EDGE_TRIGGER,),
                source="synthetic",
                full_text=f"orb orb, {EDGE_TRIGGER}",
            )


class TestIngestedCaption:
    def test_appends_source_triggers(self):
        record = ingested_caption("hand painted flame", "foreground")
        assert record.full_text == f"hand painted flame {MOTION_TRIGGER}"
        assert record.motion_phrase == ""

    def test_does_not_duplicate_present_trigger(self):
        text = f"already tagged {MOTION_TRIGGER}"
        record = ingested_caption(text, "foreground")
        assert record.full_text.count(MOTION_TRIGGER) == 1

    def test_empty_text_rejected(self):
        with pytest.raises(ValueError):
            ingested_caption("", "iterated")


class TestInferencePrompt:
    def test_appends_both_edge_first(self):
        out = inference_prompt("a blue explosion")
        assert out == f"a blue explosion {EDGE_TRIGGER} {MOTION_TRIGGER}"

    def test_idempotent(self):
        once = inference_prompt("prompt")
        assert inference_prompt(once) == once

    def test_partial_prompt_completed(self):
        out = inference_prompt(f"text {MOTION_TRIGGER}")
        assert out.count(EDGE_TRIGGER) == 1 and out.count(MOTION_TRIGGER) == 1

    def test_empty_base(self):
        out = inference_prompt("")
        assert EDGE_TRIGGER in out and MOTION_TRIGGER in out
        assert not out.startswith(" ")
