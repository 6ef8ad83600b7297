from PIL import Image

from scf_workbench.services.lemma_engine import find_dictator_via_proof
from scf_workbench.services.trace_render import CELL_HEIGHT, CHANGED, TINTS, TraceRenderService


def _left_of(columns, column):
    return sum(width for _, width in columns[:column])


def test_one_row_per_step(dictator0):
    trace = find_dictator_via_proof(dictator0).trace
    image = TraceRenderService().render(trace)
    assert image.mode == "RGB"
    assert image.height == (len(trace) + 1) * CELL_HEIGHT + 1


def test_changed_voter_highlighted(dictator1):
    trace = find_dictator_via_proof(dictator1).trace
    service = TraceRenderService()
    image = service.render(trace)
    columns = service._columns(trace)
    position, step = next((p, s) for p, s in enumerate(trace.steps) if s.changed_voter is not None)
    top = (position + 1) * CELL_HEIGHT
    left = _left_of(columns, 1 + step.changed_voter)
    assert image.getpixel((left + 2, top + CELL_HEIGHT - 2)) == CHANGED
    unchanged = 1 + (1 - step.changed_voter)
    assert image.getpixel((_left_of(columns, unchanged) + 2, top + CELL_HEIGHT - 2)) == TINTS[step.justification]


def test_save_is_deterministic(dictator0, tmp_path):
    trace = find_dictator_via_proof(dictator0).trace
    service = TraceRenderService()
    first = service.save(trace, tmp_path / "a.png")
    second = service.save(trace, tmp_path / "b.png")
    assert first.read_bytes() == second.read_bytes()
    with Image.open(first) as image:
        assert image.format == "PNG"
