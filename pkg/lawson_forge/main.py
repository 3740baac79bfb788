"""
lawson-forge command-line application

Subcommands:
- generate: propagate Cauchy data, build nets, verify them
- lawson: the ℝ³/𝕊³ pair, the sphere family, Calapso labels and the Euclidean limit
- verify: re-verify net files
- reconstruct: recover Lax data from a net file
- export: write a net file as OBJ

Exit codes: 0 every check passed, 1 configuration or input error,
2 verification failure (outputs are still written).
"""

import argparse
import logging
import math
import os
import sys
from itertools import combinations
from typing import Dict, List, Optional, Sequence

import numpy as np

from .core.errors import (
    ConfigError,
    InconsistentGaussMapError,
    LawsonForgeError,
    NotCMCQuadError,
    NotIntegrableError,
    NotOnSphereError,
    TrapezoidOrientationError,
)
from .core.lax import check_lattice, propagate
from .core.log import configure_logging
from .core.models import Ambient, LatticeLax
from .data import ConfigLoader, NetFile, NetLoader, ObjExporter, RunConfig
from .reporting import VerificationReport, net_from_file, verify_lawson, verify_net
from .surfaces import (
    calapso_labeling_check,
    euclidean_limit,
    immerse_r3_lattice,
    immerse_s3,
    lawson_pair,
    reconstruct_net,
    scale_to_sphere,
    sphere_family,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFICATION = 2

VERIFICATION_ERRORS = (NotIntegrableError, InconsistentGaussMapError, NotCMCQuadError,
                       NotOnSphereError, TrapezoidOrientationError)


class LawsonForgeApp:
    """Wires configuration, generation, verification and file output together"""

    def __init__(self, config: RunConfig, output_format: str = "json"):
        self.config = config
        self.tolerances = config.tolerances
        self.output_format = output_format

    # Output helpers

    def _path(self, name: str) -> str:
        os.makedirs(self.config.out_dir, exist_ok=True)
        return os.path.join(self.config.out_dir, name)

    def _write_net(self, name: str, net_file: NetFile) -> str:
        if self.output_format == "obj":
            path = self._path(f"{name}.obj")
            ObjExporter.export(net_file, path)
        else:
            path = self._path(f"{name}.json")
            NetLoader.save_net(net_file, path)
        return path

    def _write_reports(self, name: str, reports: Sequence[VerificationReport]) -> str:
        path = self._path(name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(NetLoader.dumps({"config": self.config.digest(),
                                     "tolerance_scale": self.config.tolerance_scale,
                                     "reports": [r.to_dict() for r in reports]}))
        return path

    @staticmethod
    def _status(reports: Sequence[VerificationReport]) -> int:
        for r in reports:
            print(r.summary())
        return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFICATION

    # Pipelines

    def build_lattice(self) -> LatticeLax:
        cauchy = self.config.build_cauchy()
        lat = propagate(cauchy, self.tolerances, self.config.strict)
        check = check_lattice(lat)
        if not check.passes(self.tolerances):
            logger.warning("propagated lattice misses the quad invariants: %s", check)
        return lat

    def _nets(self, lat: LatticeLax) -> Dict[str, object]:
        nets: Dict[str, object] = {}
        for ambient in self.config.ambients:
            if ambient is Ambient.R3:
                nets["net_r3"] = immerse_r3_lattice(lat)
                continue
            for i, gamma in enumerate(self.config.gammas):
                net = immerse_s3(lat, gamma)
                if ambient is Ambient.SPHERE:
                    nets[f"net_sphere_{i}"] = scale_to_sphere(net, self.config.scale)
                else:
                    nets[f"net_s3_{i}"] = net
        return nets

    def run_generate(self) -> int:
        cfg = self.config
        if cfg.width < 2 or cfg.height < 2:
            raise ConfigError("no faces to verify")
        lat = self.build_lattice()
        prov = {"config": cfg.digest()}
        reports = []
        for name, net in self._nets(lat).items():
            self._write_net(name, NetFile.from_net(net, lat, prov))
            reports.append(verify_net(net, lat, self.tolerances))
        path = self._write_reports("report_generate.json", reports)
        print(f"Wrote {len(reports)} nets and {path}")
        return self._status(reports)

    def run_lawson(self) -> int:
        cfg = self.config
        if cfg.width < 2 or cfg.height < 2:
            raise ConfigError("no faces to verify")
        lat = self.build_lattice()
        prov = {"config": cfg.digest()}
        pair = lawson_pair(lat, self.tolerances)
        self._write_net("lawson_r3", NetFile.from_net(pair.r3, lat, prov))
        self._write_net("lawson_s3", NetFile.from_net(pair.s3, lat, prov))

        gammas = [g for g in cfg.gammas if g != math.pi / 4]
        members = sphere_family(lat, [math.pi / 4] + gammas, cfg.scale, self.tolerances) if gammas else []
        for i, member in enumerate(members):
            self._write_net(f"family_{i}", NetFile.from_net(member.net, lat, prov))
        calapso = [calapso_labeling_check(a, b, lat) for a, b in combinations(members, 2)]
        limit = euclidean_limit(lat, cfg.limit_gammas, self.tolerances) if cfg.limit_gammas else []

        report = verify_lawson(pair, members, calapso, limit, self.tolerances)
        path = self._write_reports("report_lawson.json", [report])
        print(f"Wrote Lawson pair, {len(members)} family members and {path}")
        return self._status([report])

    def run_verify(self, paths: Sequence[str]) -> int:
        reports = []
        for path in paths:
            net_file = NetLoader.load_net(path)
            report = verify_net(net_from_file(net_file), net_file.lattice, self.tolerances)
            report.info["file"] = os.path.basename(path)
            reports.append(report)
        self._write_reports("report_verify.json", reports)
        return self._status(reports)

    def run_reconstruct(self, path: str) -> int:
        net_file = NetLoader.load_net(path)
        points, normals, ambient = net_file.vertices, net_file.normals, net_file.ambient
        gamma1 = net_file.provenance.get("gamma")
        if ambient is Ambient.SPHERE:
            points = points / float(np.linalg.norm(points[0, 0]))
            ambient = Ambient.S3
        report = reconstruct_net(points, normals, ambient, gamma1=gamma1, tol=self.tolerances)
        NetLoader.save_lattice(report.lattice, self._path("lax.json"),
                               {"source": os.path.basename(path), "gamma": report.gamma1,
                                "transposed": report.transposed})

        verification = VerificationReport("reconstruct", info={"file": os.path.basename(path),
                                                               "gamma1": report.gamma1,
                                                               "transposed": report.transposed})
        verification.faces.update(commutation=report.commutation, labeling=report.labeling)
        verification.add("commutation and labeling residuals", report.max_residual,
                         self.tolerances.reconstruct_consistency)
        if net_file.lattice is not None and not report.transposed:
            verification.add("round trip against embedded lax data",
                             _lattice_distance(report.lattice, net_file.lattice),
                             self.tolerances.reconstruct_consistency)
        self._write_reports("report_reconstruct.json", [verification])
        return self._status([verification])

    def run_export(self, path: str, target: Optional[str]) -> int:
        text = ObjExporter.to_obj(NetLoader.load_net(path))
        if target:
            with open(target, "w", encoding="utf-8") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK


def _lattice_distance(x: LatticeLax, y: LatticeLax) -> float:
    if (x.width, x.height) != (y.width, y.height):
        return math.inf
    worst = 0.0
    for p, q in ((x.a, y.a), (x.u, y.u), (x.b, y.b), (x.v, y.v)):
        if p.size:
            worst = max(worst, float(np.max(np.abs(p - q))))
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lawson-forge",
        description="Discrete CMC nets in ℝ³ and 𝕊³ from quaternionic Lax pairs")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="output directory")
    common.add_argument("--width", type=int, help="lattice width M")
    common.add_argument("--height", type=int, help="lattice height N")
    common.add_argument("--tolerance", type=float, help="uniform scale applied to every tolerance")
    common.add_argument("--gamma", type=float, nargs="+", help="spectral angles γ₁ in (0, π/2)")
    common.add_argument("--ambient", choices=[a.value for a in Ambient], action="append",
                        help="target ambient (repeatable)")
    common.add_argument("--seed", type=int, help="seed for the random Cauchy preset")
    common.add_argument("--format", choices=["json", "obj"], default="json", help="net output format")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="build and verify nets")
    sub.add_parser("lawson", parents=[common], help="Lawson pair, sphere family and Euclidean limit")
    verify = sub.add_parser("verify", parents=[common], help="verify net files")
    verify.add_argument("nets", nargs="+")
    reconstruct = sub.add_parser("reconstruct", parents=[common], help="recover Lax data from a net file")
    reconstruct.add_argument("net")
    export = sub.add_parser("export", parents=[common], help="write a net file as OBJ")
    export.add_argument("net")
    return parser


def _config(args) -> RunConfig:
    cfg = ConfigLoader.load_config(args.config) if args.config else RunConfig()
    overrides = {}
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.width is not None:
        overrides["width"] = args.width
    if args.height is not None:
        overrides["height"] = args.height
    if args.tolerance is not None:
        overrides["tolerance_scale"] = args.tolerance
    if args.gamma is not None:
        overrides["gammas"] = args.gamma
    if args.ambient is not None:
        overrides["ambients"] = args.ambient
    if args.seed is not None:
        overrides["seed"] = args.seed
    if not overrides:
        return cfg
    data = cfg.to_dict()
    data.update(overrides)
    return ConfigLoader.from_mapping(data)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the lawson-forge command line"""
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        app = LawsonForgeApp(_config(args), args.format)
        if args.command == "generate":
            return app.run_generate()
        if args.command == "lawson":
            return app.run_lawson()
        if args.command == "verify":
            return app.run_verify(args.nets)
        if args.command == "reconstruct":
            return app.run_reconstruct(args.net)
        return app.run_export(args.net, args.out)
    except VERIFICATION_ERRORS as exc:
        print(f"Verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except LawsonForgeError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_INPUT
