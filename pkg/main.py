"""
Phantom Purity - 主程序入口

随机量子线路纯度动力学的实验复现工具：Monte Carlo、精确转移矩阵、Toeplitz 谱分析。
"""

import logging
import sys
from pathlib import Path
from typing import Optional

import click
from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from src.config import AppConfig
from src.exceptions import PhantomPurityError
from src.experiments import ExperimentRunner, list_experiments
from src.models.experiment import ExperimentId, ExperimentSpec, VerdictLevel
from src.report_generator import ReportGenerator

console = Console()

EXPERIMENT_CHOICES = [e.value for e in ExperimentId]
LEVEL_STYLES = {
    VerdictLevel.OK: "green",
    VerdictLevel.WARNING: "yellow",
    VerdictLevel.REFUSAL: "red",
    VerdictLevel.UNSUPPORTED: "magenta",
}


def _int_list(ctx, param, value: Optional[str]) -> Optional[list[int]]:
    if not value:
        return None
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"需要逗号分隔的整数列表: {value}")


def _float_list(ctx, param, value: Optional[str]) -> Optional[list[float]]:
    if not value:
        return None
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"需要逗号分隔的数值列表: {value}")


def spec_options(func):
    """Options shared by `run` and `validate`."""
    options = [
        click.argument("experiment", required=False, type=click.Choice(EXPERIMENT_CHOICES)),
        click.option("--config", "config_file", default=None, type=click.Path(exists=True), help="实验参数 JSON 文件"),
        click.option("--d", "d", default=None, type=int, help="局域维度 d (默认: 3)"),
        click.option("--n", "n", default=None, type=int, help="格点数 n (默认: 20)"),
        click.option("--protocol", default=None, type=click.Choice(["staircase", "brickwall"]), help="线路结构"),
        click.option("--gate-policy", default=None, type=click.Choice(["iid", "single"]), help="门采样方式"),
        click.option("--t-max", default=None, type=int, help="最大时间步 (默认: 40)"),
        click.option("--cuts", default=None, callback=_int_list, help="切分位置 k, 逗号分隔"),
        click.option("--sizes", default=None, callback=_int_list, help="多尺寸实验的 n 列表, 逗号分隔"),
        click.option("--realizations", default=None, type=int, help="Monte Carlo 样本数 (0 = 跳过)"),
        click.option("--epsilon", default=None, callback=_float_list, help="扰动强度 ε, 逗号分隔"),
        click.option("--trials", default=None, type=int, help="每个 (n, ε) 的赝谱采样次数"),
        click.option("--seed", default=None, type=int, help="随机种子"),
        click.option("--mode", default=None, type=click.Choice(["float", "rational"]), help="数值模式"),
        click.option("--out", default=None, help="输出目录"),
        click.option("--format", "fmt", default=None, type=click.Choice(["csv", "json"]), help="输出格式"),
        click.option("--env-file", "-e", default=".env", help=".env 文件路径"),
        click.option("--n-jobs", default=None, type=int, help="并行进程数 (不影响结果)"),
        click.option("--verbose", "-v", is_flag=True, help="详细输出"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _setup(env_file: str, out: Optional[str], n_jobs: Optional[int], verbose: bool) -> AppConfig:
    if Path(env_file).exists():
        load_dotenv(env_file)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )
    return AppConfig.from_args(output_dir=out, n_jobs=n_jobs, verbose=verbose)


def _build_spec(experiment: Optional[str], config_file: Optional[str], **flags) -> ExperimentSpec:
    if config_file:
        spec = ExperimentSpec.from_file(config_file)
        if experiment:
            flags["experiment"] = experiment
    elif experiment:
        spec = ExperimentSpec(experiment=experiment)
    else:
        raise click.UsageError("必须指定实验名称或 --config 文件")
    return spec.merge_overrides(**flags)


def _print_report(report):
    table = Table(title=f"参数检查: {report.experiment.value}")
    table.add_column("级别", style="bold")
    table.add_column("说明")
    for verdict in report.verdicts:
        style = LEVEL_STYLES[verdict.level]
        table.add_row(f"[{style}]{verdict.level.value}[/{style}]", verdict.message)
    console.print(table)
    console.print(f"[cyan]预计内存:[/cyan] {report.memory_bytes / 2 ** 20:.1f} MiB")
    console.print(f"[cyan]运行时间级别:[/cyan] {report.runtime_class}")


@click.group()
def cli():
    """
    Phantom Purity - 随机线路纯度动力学实验工具

    计算阶梯型与砖墙型随机线路中子系统纯度的衰减，复现幻影衰减与 λ₂ 渐近行为。
    """


@cli.command()
@spec_options
def run(experiment, config_file, env_file, n_jobs, verbose, fmt, t_max, gate_policy, **flags):
    """运行一个实验并写出数据表。"""
    config = _setup(env_file, flags.get("out"), n_jobs, verbose)
    try:
        spec = _build_spec(
            experiment, config_file,
            format=fmt, t_max=t_max, gate_policy=gate_policy, **flags,
        )
        out_dir = spec.out or config.output.output_dir

        console.print(Panel.fit(
            "[bold blue]Phantom Purity[/bold blue]\n"
            "随机线路纯度动力学实验工具",
            border_style="blue"
        ))
        console.print(f"\n[cyan]实验:[/cyan] {spec.experiment.value}")
        console.print(f"[cyan]参数:[/cyan] d={spec.d}, n={spec.n}, t_max={spec.t_max}, "
                      f"protocol={spec.protocol.value}, seed={spec.seed}")
        console.print(f"[cyan]输出目录:[/cyan] {out_dir}\n")

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console,
        ) as progress:
            task = progress.add_task("[cyan]检查参数...", total=None)
            runner = ExperimentRunner(config)
            report = runner.validate(spec)
            progress.update(task, description=f"[green]✓ 参数检查完成 ({report.runtime_class})")

            task = progress.add_task("[cyan]计算中...", total=None)
            result = runner.run(spec)
            rows = sum(len(t) for t in result.tables.values())
            progress.update(task, description=f"[green]✓ 生成 {len(result.tables)} 个数据表，共 {rows} 行")

            task = progress.add_task("[cyan]写出结果...", total=None)
            paths = ReportGenerator(config.output).save_result(result, out_dir, spec.format)
            progress.update(task, description=f"[green]✓ 写出 {len(paths)} 个文件")

        table = Table(title="运行摘要")
        table.add_column("指标", style="cyan")
        table.add_column("数值", style="green")
        table.add_row("实验", spec.experiment.value)
        table.add_row("参数哈希", spec.spec_hash)
        for name, frame in result.tables.items():
            table.add_row(f"表 {name}", f"{len(frame)} 行")
        console.print("\n")
        console.print(table)

        console.print("\n[bold green]✓ 完成![/bold green] 生成的文件:")
        for name, path in paths.items():
            console.print(f"  • {name}: {path}")
        for note in result.notes:
            console.print(f"[yellow]备注:[/yellow] {note}")

    except (PhantomPurityError, ValidationError, OSError) as e:
        console.print(f"\n[bold red]错误:[/bold red] {e}")
        if verbose:
            console.print_exception()
        sys.exit(1)


@cli.command()
@spec_options
def validate(experiment, config_file, env_file, n_jobs, verbose, fmt, t_max, gate_policy, **flags):
    """只检查参数与资源需求，不进行计算。"""
    config = _setup(env_file, flags.get("out"), n_jobs, verbose)
    try:
        spec = _build_spec(
            experiment, config_file,
            format=fmt, t_max=t_max, gate_policy=gate_policy, **flags,
        )
        report = ExperimentRunner(config).validate(spec)
    except (PhantomPurityError, ValidationError) as e:
        console.print(f"\n[bold red]错误:[/bold red] {e}")
        sys.exit(1)

    _print_report(report)
    if not report.ok:
        sys.exit(1)


@cli.command("list-experiments")
def list_experiments_command():
    """列出所有可复现的实验。"""
    table = Table(title="可用实验")
    table.add_column("名称", style="cyan")
    table.add_column("说明")
    table.add_column("数据表", style="green")
    for info in list_experiments():
        table.add_row(info.experiment.value, info.description, ", ".join(info.tables))
    console.print(table)


if __name__ == "__main__":
    cli()
