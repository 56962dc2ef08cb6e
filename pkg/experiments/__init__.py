from .config import EXPERIMENTS, ExperimentConfig, read_config_file, resolve_config
from .figures import (
    FIGURES,
    FigureResult,
    PointTask,
    evaluate_tasks,
    run_fig2,
    run_fig3,
    run_fig4,
    run_fig5,
    run_fig6,
)
from .output import Plot, ResultRow, write_csv, write_svg
from .report import InspectionReport, format_report, inspect_state, load_inspection_state

__all__ = [
    "EXPERIMENTS",
    "ExperimentConfig",
    "read_config_file",
    "resolve_config",
    "FIGURES",
    "FigureResult",
    "PointTask",
    "evaluate_tasks",
    "run_fig2",
    "run_fig3",
    "run_fig4",
    "run_fig5",
    "run_fig6",
    "Plot",
    "ResultRow",
    "write_csv",
    "write_svg",
    "InspectionReport",
    "format_report",
    "inspect_state",
    "load_inspection_state",
]
