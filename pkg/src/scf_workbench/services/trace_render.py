from pathlib import Path

from PIL import Image, ImageDraw, ImageFont

from scf_workbench.config import logger
from scf_workbench.prefcore import profile_from_index
from scf_workbench.services.lemma_engine import Justification, ProofTrace

CELL_HEIGHT = 18
PADDING = 4
CHAR_WIDTH = 7
BACKGROUND = (255, 255, 255)
GRID = (200, 200, 200)
TEXT = (20, 20, 20)
CHANGED = (255, 236, 160)
HEADER = (225, 232, 245)

# row tint per justification
TINTS = {
    Justification.INITIAL: (235, 235, 235),
    Justification.STP_STEP: BACKGROUND,
    Justification.UNM_APPLICATION: (214, 240, 214),
    Justification.LEMMA1_REF: (222, 230, 250),
    Justification.LEMMA2_REF: (240, 222, 250),
    Justification.DICHOTOMY: (250, 226, 214),
}


class TraceRenderService:
    """
    Draws a proof trace as a PNG grid: one row per step, one column per voter
    holding that voter's ranking (top first), then the outcome and the justification.
    The cell of the voter that changed at a step is highlighted.
    """

    def __init__(self, font: ImageFont.ImageFont | None = None):
        self.font = font or ImageFont.load_default()

    def _columns(self, trace: ProofTrace) -> list[tuple[str, int]]:
        ranking_width = (2 * trace.m - 1) * CHAR_WIDTH + 2 * PADDING
        columns = [("step", 5 * CHAR_WIDTH + 2 * PADDING)]
        columns += [(f"voter {v}", max(ranking_width, 8 * CHAR_WIDTH)) for v in range(trace.n)]
        columns += [("f", 3 * CHAR_WIDTH + 2 * PADDING), ("justification", 16 * CHAR_WIDTH + 2 * PADDING)]
        return columns

    def render(self, trace: ProofTrace) -> Image.Image:
        """
        Build the image for a trace.
        Args:
            trace: Any proof trace; profiles are decoded from their indices.
        Returns:
            RGB PIL Image.
        """
        columns = self._columns(trace)
        width = sum(w for _, w in columns) + 1
        height = (len(trace.steps) + 1) * CELL_HEIGHT + 1
        logger.debug(f"Rendering trace of {len(trace)} steps into {width}x{height} image")
        image = Image.new("RGB", (width, height), BACKGROUND)
        draw = ImageDraw.Draw(image)

        self._row(draw, 0, columns, [name for name, _ in columns], HEADER, None)
        for position, step in enumerate(trace.steps):
            x = profile_from_index(step.profile_index, trace.m, trace.n)
            cells = [str(position)]
            cells += [">".join(str(a) for a in order.ranking) for order in x]
            cells += [str(step.outcome), step.justification.value]
            highlight = 1 + step.changed_voter if step.changed_voter is not None else None
            self._row(draw, (position + 1) * CELL_HEIGHT, columns, cells, TINTS[step.justification], highlight)
        return image

    def _row(self, draw: ImageDraw.ImageDraw, top: int, columns: list[tuple[str, int]], cells: list[str],
             tint: tuple[int, int, int], highlight: int | None) -> None:
        left = 0
        for column, ((_, width), text) in enumerate(zip(columns, cells)):
            fill = CHANGED if column == highlight else tint
            draw.rectangle([left, top, left + width, top + CELL_HEIGHT], fill=fill, outline=GRID)
            draw.text((left + PADDING, top + PADDING // 2 + 1), text, fill=TEXT, font=self.font)
            left += width

    def save(self, trace: ProofTrace, path: str | Path) -> Path:
        """Render and write a PNG; returns the written path."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        image = self.render(trace)
        image.save(path, format="PNG", optimize=True)
        logger.info(f"Trace rendered to {path} ({image.width}x{image.height})")
        return path
