from enum import Enum


class StyleClass(str, Enum):
    FAULKNER_ESQUE = "faulkner"
    HEMINGWAY_ESQUE = "hemingway"

    @classmethod
    def parse(cls, value) -> "StyleClass":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-esque", "").replace("esque", "")
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown style class {value!r}")


class AgentRole(str, Enum):
    CORE_TRANSLATION = "core_translation"
    LINGUISTIC_STRUCTURE = "linguistic_structure"
    METAPHOR_TRANSLATION = "metaphor_translation"
    EMOTION_TRANSFER = "emotion_transfer"
    RHYTHM_PROSODY = "rhythm_prosody"
    CONSISTENCY_FIDELITY = "consistency_fidelity"
