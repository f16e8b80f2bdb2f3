import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__
from .actuator.errors import ActuatorModelError
from .actuator.modes import motion_mode, stiffness_state
from .helper import plots, tables
from .helper.config_file import ConfigError, DEFAULT_CONFIG_NAME, load_config
from .mocap import analysis
from .mocap.errors import MocapError
from .mocap.trajectories import load_trajectories, load_trials
from .numerics.errors import NumericsError
from .twist_model import predict_twist_curve


logger = logging.getLogger(__name__)

EXIT_OK: int = 0
EXIT_USAGE: int = 1
EXIT_DATA: int = 2

TWIST_HEADER: list[str] = ['pressure_kpa', 'twist_radius_mm', 'residual', 'pre_loop']
CIRCLE_HEADER: list[str] = ['frame', 'radius_mm', 'center_x_mm', 'center_y_mm', 'rms_mm', 'markers_used']
VOLUME_HEADER: list[str] = ['config', 'volume_mm3']
VOLUME_INCREASE_HEADER: list[str] = VOLUME_HEADER + ['increase_mm3', 'increase_percent']
REPEATABILITY_HEADER: list[str] = ['mode', 'mean_deviation_mm', 'trials']


class UsageError(Exception):
    pass


@dataclass
class CommandOutcome:
    exit_code: int = EXIT_OK
    artifacts: list[str] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments, which is the data-error code here.
    def error(self, message):
        raise UsageError(message)


def _existing_file(path: str) -> Path:
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"Input file {path} does not exist.")
    return path


def _config(args):
    # An explicitly named config file must exist, the implicit default may be absent.
    return load_config(args.config if args.config is not None else DEFAULT_CONFIG_NAME,
                       required=args.config is not None)


def pressure_range(pmin: float, pmax: float, step: float) -> list[float]:
    """
    Pressures pmin, pmin + step, ... up to pmax inclusive, rounded to 10 decimals.
    """

    if not all(math.isfinite(value) for value in (pmin, pmax, step)):
        raise UsageError("Pressure range values must be finite.")
    if pmin < 0:
        raise UsageError(f"--pmin must be >= 0 kPa, got {pmin}.")
    if pmin > pmax:
        raise UsageError(f"--pmin ({pmin}) must not exceed --pmax ({pmax}).")
    if not step > 0:
        raise UsageError(f"--step must be positive, got {step}.")

    count = math.floor((pmax - pmin) / step + 1e-9) + 1
    return [round(pmin + index * step, 10) for index in range(count)]


def cmd_predict_twist(args) -> CommandOutcome:
    config = _config(args)
    pressures = pressure_range(args.pmin, args.pmax, args.step)

    curve = predict_twist_curve(config.geometry, config.material, pressures, settings=config.settings)

    rows = [[sample.pressure_kpa, sample.twist_radius_mm, sample.gradient_residual, sample.pre_loop]
            for sample in curve]
    tables.write_rows(args.out, TWIST_HEADER, rows)
    outcome = CommandOutcome(artifacts=[str(args.out)])

    if args.plot:
        plots.line_chart(
            curve.pressures(), curve.radii(), args.plot,
            xlabel='Pressure [kPa]', ylabel='Twist radius [mm]', title='Analytical twist radius')
        outcome.artifacts.append(str(args.plot))

    outcome.summary.append(f"Predicted {len(curve)} twist radii from {pressures[0]} to {pressures[-1]} kPa.")
    if not curve.is_monotone():
        outcome.summary.append("Twist radius is not monotone in pressure past the loop onset.")
    for sample in curve.failures:
        outcome.summary.append(f"Solve failed at {sample.pressure_kpa} kPa: {sample.error}")
    if curve.failures:
        outcome.exit_code = EXIT_DATA
    outcome.summary.append(f"Wrote {', '.join(outcome.artifacts)}")
    return outcome


def cmd_fit_circle(args) -> CommandOutcome:
    markers = load_trajectories(_existing_file(args.markers))
    reference_ids = [marker_id for marker_id in (args.reference or '').split(',') if marker_id]

    outcome = CommandOutcome()
    if args.best_frame:
        frame = analysis.best_frame(markers, reference_ids)
        outcome.summary.append(f"Best frame is {frame}.")
    else:
        frame = args.frame

    circle = analysis.experimental_twist_radius(markers, frame, reference_ids)
    used = len(analysis.visible_markers(markers, frame, reference_ids))

    row = [frame, circle.radius, circle.center[0], circle.center[1], circle.rms_residual, used]
    tables.write_rows(args.out, CIRCLE_HEADER, [row])
    outcome.artifacts.append(str(args.out))
    outcome.summary.append(f"Frame {frame}: twist radius {circle.radius:.3f} mm from {used} markers.")
    outcome.summary.append(f"Wrote {args.out}")
    return outcome


def cmd_sweep_volume(args) -> CommandOutcome:
    markers = load_trajectories(_existing_file(args.markers))

    total = analysis.sweep_volume(markers)
    by_config = analysis.sweep_volumes_by_config(markers)

    rows = [[config, volume] for config, volume in by_config.items()] + [['all', total]]
    increases = {}
    if args.baseline is not None:
        try:
            increases = analysis.volume_increases({**by_config, 'all': total}, args.baseline)
        except ValueError as e:
            raise UsageError(str(e)) from e
        rows = [row + list(increases[row[0]]) for row in rows]
    tables.write_rows(args.out, VOLUME_INCREASE_HEADER if increases else VOLUME_HEADER, rows)
    outcome = CommandOutcome(artifacts=[str(args.out)])

    if args.plot:
        positions = [trajectory.positions for trajectory in markers.values()]
        plots.scatter_top_view(
            [point for block in positions for point in block], args.plot, title='Swept marker positions')
        outcome.artifacts.append(str(args.plot))

    for config, volume in by_config.items():
        outcome.summary.append(f"Swept volume for {config}: {volume:.1f} mm^3")
    outcome.summary.append(f"Swept volume: {total:.1f} mm^3")
    for config, (extra, percent) in increases.items():
        if config != args.baseline:
            outcome.summary.append(f"{config} adds {extra:.1f} mm^3 ({percent:+.1f} %) over {args.baseline}")
    outcome.summary.append(f"Wrote {', '.join(outcome.artifacts)}")
    return outcome


def cmd_repeatability(args) -> CommandOutcome:
    trial_sets = load_trials(_existing_file(args.trials))
    report = analysis.repeatability_stats(trial_sets.values())

    rows = [[mode.value, value, len(trial_sets[mode])] for mode, value in report.per_mode.items()]
    rows.append(['overall', report.overall, sum(len(trial_set) for trial_set in trial_sets.values())])
    tables.write_rows(args.out, REPEATABILITY_HEADER, rows)

    outcome = CommandOutcome(artifacts=[str(args.out)])
    for mode, value in report.per_mode.items():
        outcome.summary.append(f"{mode.value}: {value:.3f} mm over {len(trial_sets[mode])} trials")
    outcome.summary.append(f"overall: {report.overall:.3f} mm")
    outcome.summary.append(f"Wrote {args.out}")
    return outcome


def cmd_mode(args) -> CommandOutcome:
    try:
        states = stiffness_state(args.humofit1), stiffness_state(args.humofit2)
    except ValueError as e:
        raise UsageError(str(e)) from e

    mode = motion_mode(args.humofit1, args.humofit2)
    return CommandOutcome(summary=[
        mode.value,
        f"humofit1: {states[0].value} at {args.humofit1} C",
        f"humofit2: {states[1].value} at {args.humofit2} C",
    ])


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog='twistmodel', description='Twist radius model and motion capture analysis of a soft actuator.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG logging.')

    common = _ArgumentParser(add_help=False)
    common.add_argument(
        '--config', default=None,
        help=f"INI file with [geometry], [material] and [solver] sections. Default: '{DEFAULT_CONFIG_NAME}' "
             f"if present, otherwise built-in parameters.")

    commands = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    predict = commands.add_parser('predict-twist', parents=[common], help='Twist radius over a pressure sweep.')
    predict.add_argument('--pmin', type=float, default=18.0, help='First pressure in kPa.')
    predict.add_argument('--pmax', type=float, default=30.0, help='Last pressure in kPa.')
    predict.add_argument('--step', type=float, default=1.0, help='Pressure step in kPa.')
    predict.add_argument('--out', required=True, help='Output CSV.')
    predict.add_argument('--plot', default=None, help='Optional SVG chart of radius vs pressure.')
    predict.set_defaults(handler=cmd_predict_twist)

    fit = commands.add_parser('fit-circle', parents=[common], help='Experimental twist radius from markers.')
    fit.add_argument('markers', help='Marker CSV.')
    which = fit.add_mutually_exclusive_group(required=True)
    which.add_argument('--frame', type=int, help='Frame to fit.')
    which.add_argument('--best-frame', action='store_true', help='Use the frame with the most visible markers.')
    fit.add_argument('--reference', default='', help='Comma separated marker ids to leave out of the fit.')
    fit.add_argument('--out', required=True, help='Output CSV.')
    fit.set_defaults(handler=cmd_fit_circle)

    sweep = commands.add_parser('sweep-volume', parents=[common], help='Convex hull volume of all markers.')
    sweep.add_argument('markers', help='Marker CSV, optionally with a trailing config column.')
    sweep.add_argument('--out', required=True, help='Output CSV.')
    sweep.add_argument('--plot', default=None, help='Optional SVG top view of the point cloud.')
    sweep.add_argument(
        '--baseline', default=None, help='Config label of the reference working region; adds the volume increase columns.')
    sweep.set_defaults(handler=cmd_sweep_volume)

    repeat = commands.add_parser('repeatability', parents=[common], help='Mean endpoint deviation per mode.')
    repeat.add_argument('trials', help='Trial CSV.')
    repeat.add_argument('--out', required=True, help='Output CSV.')
    repeat.set_defaults(handler=cmd_repeatability)

    mode = commands.add_parser('mode', parents=[common], help='Motion mode for two Humofit temperatures.')
    mode.add_argument('--humofit1', type=float, required=True, help='Wound Humofit thread temperature in C.')
    mode.add_argument('--humofit2', type=float, required=True, help='Humofit strip temperature in C.')
    mode.set_defaults(handler=cmd_mode)

    return parser


def _configure_logging(verbose: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def run(argv: Optional[Sequence[str]] = None) -> CommandOutcome:
    """
    Parse the arguments and run one subcommand. Errors are turned into the exit code of the outcome.

    :param argv: list of strings, default is sys.argv[1:].
    :return: CommandOutcome.
    """

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return CommandOutcome(exit_code=EXIT_USAGE, summary=[f"twistmodel: error: {e}"])

    _configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], CommandOutcome] = args.handler
    logger.info(f"Running {args.command}.")
    try:
        return handler(args)
    except (UsageError, ConfigError) as e:
        return CommandOutcome(exit_code=EXIT_USAGE, summary=[f"twistmodel {args.command}: {e}"])
    except (MocapError, NumericsError, ActuatorModelError) as e:
        return CommandOutcome(exit_code=EXIT_DATA, summary=[f"twistmodel {args.command}: {e}"])
    except OSError as e:
        return CommandOutcome(exit_code=EXIT_USAGE, summary=[f"twistmodel {args.command}: {e}"])


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        outcome = run(argv)
    except SystemExit as e:
        # --help and --version.
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    stream = sys.stdout if outcome.exit_code == EXIT_OK else sys.stderr
    for line in outcome.summary:
        print(line, file=stream)
    return outcome.exit_code


if __name__ == '__main__':
    sys.exit(main())
