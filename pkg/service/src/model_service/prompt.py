"""Prompt construction for LLM-backed text-type classification.

The prompt is assembled here, from the structured request, so clients never
carry prompt text: the data-type list with descriptions is injected first,
followed by the fixed question block.
"""

QUESTION_TEMPLATE = (
    'Question: Is this piece of text "{detected_text}" related to any following '
    "privacy information data types? Or not relevant to any of them? "
    'ONLY answer the data type or "not relevant". '
    "ONLY use the provided data type list."
)


def build_prompt(text: str, data_types) -> str:
    """data_types: iterable of objects/tuples with .name and .description."""
    lines = []
    for entry in data_types:
        name = getattr(entry, "name", None) or entry[0]
        description = getattr(entry, "description", None) or entry[1]
        lines.append(f"{name}: {description}")
    header = "\n".join(lines)
    question = QUESTION_TEMPLATE.format(detected_text=text)
    return f"{header}\n\n{question}\n\nAnswer:"
