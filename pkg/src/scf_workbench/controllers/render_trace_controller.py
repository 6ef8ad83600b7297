import argparse

from scf_workbench.exit_status import ExitStatus
from scf_workbench.controllers.base import Controller
from scf_workbench.services.trace_render import TraceRenderService
from scf_workbench.table_store import read_trace
from scf_workbench.utils import emit


class RenderTraceController(Controller):
    """Draws a trace file as a PNG."""
    name = "render-trace"

    def __init__(self, render_service: TraceRenderService | None = None):
        self.render_service = render_service or TraceRenderService()

    def execute(self, args: argparse.Namespace) -> ExitStatus:
        trace = read_trace(args.trace)
        path = self.render_service.save(trace, args.out)
        emit(f"rendered {len(trace)} steps to {path}")
        return ExitStatus.OK
