import logging
import time
from typing import List, Optional, Tuple

import pandas as pd

from src.experiments import run_experiment
from src.experiments.base import ExperimentConfig, ExperimentResult
from src.generate_report import ReportWriter, RunConfig, summary_frame

logger = logging.getLogger("Tester")


class Tester:
    """
    Runs registry experiments and hands their results to the report writer.

    Attributes:
        run_config (RunConfig): ids, grids, thresholds and emit flags
        writer (ReportWriter): artifact writer, None to skip writing
    """

    def __init__(self, run_config: RunConfig, writer: Optional[ReportWriter] = None):
        self.run_config = run_config
        self.writer = writer

    def run_test(self, exp_id: str, config: Optional[ExperimentConfig] = None) -> ExperimentResult:
        """
        Runs a single experiment and writes its artifacts.

        Args:
            exp_id (str): registry id, E1..E23
            config (ExperimentConfig): overrides the configuration derived from the run config
        Returns:
            result (ExperimentResult): subclaims, tables and overlay of the experiment
        """
        start = time.perf_counter()
        result = run_experiment(exp_id, config or self.run_config.experiment_config())
        logger.info(f"{exp_id} finished in {time.perf_counter() - start:.1f} s")
        if self.writer is not None:
            self.writer.write_result(result)
        return result

    def run_all_tests(self) -> Tuple[List[ExperimentResult], pd.DataFrame]:
        """
        Runs every experiment of the run config in registry order.

        Returns:
            results (List[ExperimentResult]): one result per experiment
            summary_df (pd.DataFrame): one row per subclaim, also written as summary.csv
        """
        config = self.run_config.experiment_config()
        results = [self.run_test(exp_id, config) for exp_id in self.run_config.experiment_ids()]
        summary_df = summary_frame(results)
        if self.writer is not None and len(results) > 1:
            self.writer.write_summary(summary_df)

        failed = [r.id for r in results if not r.passed]
        if failed:
            logger.warning(f"{len(failed)} of {len(results)} experiments failed: {', '.join(failed)}")
        else:
            logger.info(f"all {len(results)} experiments passed")
        return results, summary_df
