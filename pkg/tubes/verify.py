import logging

import numpy as np
from pydantic import BaseModel, ConfigDict
from tqdm import tqdm

from core.config import DEFAULT_LIMITS, Limits
from core.enums import CaseTag
from surface.generator import GeneratorParams, random_triangulation
from tubes.report import TubeReport, tube_report


class VerifiedInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int
    params: GeneratorParams
    report: TubeReport


class VerificationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int
    instances: tuple[VerifiedInstance, ...]

    @property
    def failures(self) -> list[VerifiedInstance]:
        return [instance for instance in self.instances if not instance.report.all_equal]

    @property
    def ok(self) -> bool:
        return not self.failures


class VerificationRunner:
    B_MAX = 8
    P_MAX = 6
    Q_MAX = 6
    EAR_MAX = 2

    def __init__(
        self,
        seed: int,
        b_max: int | None = None,
        p_max: int | None = None,
        q_max: int | None = None,
        limits: Limits = DEFAULT_LIMITS,
    ) -> None:
        self.seed = seed
        self.b_max = b_max or self.B_MAX
        self.p_max = p_max or self.P_MAX
        self.q_max = q_max or self.Q_MAX
        self.limits = limits
        self.rng = np.random.default_rng(seed)
        self.logger = logging.getLogger(__name__)

        if self.b_max < 2 or self.p_max < 1 or self.q_max < 1:
            raise ValueError("Need b_max >= 2 and p_max, q_max >= 1")

    def draw_params(self) -> GeneratorParams:
        # Case I needs at least one arc crossing from P to Q: b + 3 - p - q >= 1
        while True:
            b = int(self.rng.integers(2, self.b_max + 1))
            p = int(self.rng.integers(1, self.p_max + 1))
            q = int(self.rng.integers(1, self.q_max + 1))
            if b + 3 - p - q >= 1:
                break

        ears = int(self.rng.integers(0, self.EAR_MAX + 1))
        return GeneratorParams(b=b, p=p, q=q, case=CaseTag.I, ears=ears)

    def run(self, count: int, progress: bool = False) -> VerificationResult:
        if count < 0:
            raise ValueError("Instance count cannot be negative")

        instances = []
        for _ in tqdm(range(count), disable=not progress):
            params = self.draw_params()
            instance_seed = int(self.rng.integers(2**31))
            t = random_triangulation(instance_seed, params)
            report = tube_report(t, self.limits)

            if not report.all_equal:
                self.logger.warning(
                    f"Instance seed {instance_seed} ({params}) disagrees: {report.growths()}"
                )
            instances.append(
                VerifiedInstance(seed=instance_seed, params=params, report=report)
            )

        result = VerificationResult(seed=self.seed, instances=tuple(instances))
        self.logger.info(
            f"Verified {count} instances from seed {self.seed}: {len(result.failures)} failures"
        )
        return result
