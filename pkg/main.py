#!/usr/bin/env python3
"""最大暴露问题求解器主入口文件"""

import argparse
import sys
import traceback
from pathlib import Path
from typing import List, Optional

import networkx as nx

# 添加项目根目录到Python路径
sys.path.append(str(Path(__file__).parent))

from models.instance_file import read_instance, read_result, result_to_json, write_instance, write_result
from src.exposure_system import ALGORITHMS, ExposureSystem, ratio_plot_data
from src.generators import (RandomInstanceConfig, bipartite_double_cover, gen_checkerboard,
                            gen_convex_from_hypergraph, gen_random, random_bipartite_graph,
                            random_hypergraph)
from utils.config import load_config
from utils.errors import BudgetExceededError, ConsistencyError, InvalidInputError
from utils.logger import configure_logging, get_logger

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INFEASIBLE = 2


def build_parser() -> argparse.ArgumentParser:
    """构建 gen / solve / verify / bench 子命令解析器"""
    parser = argparse.ArgumentParser(description="几何最大暴露问题求解器")
    parser.add_argument("--config", default="./config.yaml", help="配置文件路径")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="生成实例文件")
    gen.add_argument("kind", choices=["random", "checkerboard", "convex"])
    gen.add_argument("-o", "--output", required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--k", type=int, default=1)
    # random
    gen.add_argument("--n", type=int, default=6, help="范围数")
    gen.add_argument("--m", type=int, default=10, help="点数")
    gen.add_argument("--shape", default="unit-squares", choices=["unit-squares", "squares", "rects", "disks"])
    gen.add_argument("--aspect", type=int, default=2)
    gen.add_argument("--ply", type=int, default=None)
    gen.add_argument("--extent", type=int, default=4)
    gen.add_argument("--resolution", type=int, default=4)
    # checkerboard / convex
    gen.add_argument("--a", type=int, default=3, help="二部图 A 侧顶点数")
    gen.add_argument("--b", type=int, default=3, help="二部图 B 侧顶点数")
    gen.add_argument("--p", type=float, default=0.5, help="随机图边概率")
    gen.add_argument("--eps", default="1/2", help="棋盘格细条宽度")
    gen.add_argument("--double-cover", action="store_true", help="由 G(n,p) 图的二部双覆盖生成棋盘格")
    gen.add_argument("--vertices", type=int, default=4)
    gen.add_argument("--edges", type=int, default=5)

    solve = sub.add_parser("solve", help="求解实例")
    solve.add_argument("instance")
    solve.add_argument("--algo", required=True, choices=list(ALGORITHMS))
    solve.add_argument("--alpha", type=int, default=None)
    solve.add_argument("--eps", default=None)
    solve.add_argument("--budget", default=None, help='整数或 "<c>k"，如 "4k"')
    solve.add_argument("--no-timing", action="store_true", help="结果记录中不写入用时")
    solve.add_argument("-o", "--output", default=None)

    verify = sub.add_parser("verify", help="复核结果记录")
    verify.add_argument("instance")
    verify.add_argument("result")

    bench = sub.add_parser("bench", help="在语料目录上做基准测试")
    bench.add_argument("corpus", nargs="?", default=None, help="实例目录，默认取配置中的 data_dir")
    bench.add_argument("--algorithms", default=None, help="逗号分隔的算法列表")
    bench.add_argument("-o", "--output", default=None, help="比值表 CSV")
    bench.add_argument("--plot-data", default=None, help="比值-k 绘图数据 CSV")
    return parser


def cmd_gen(args: argparse.Namespace) -> int:
    """生成实例并写入文件"""
    metadata = {"generator": args.kind, "seed": args.seed}
    if args.kind == "random":
        config = RandomInstanceConfig(n=args.n, m=args.m, k=args.k, shape=args.shape, aspect=args.aspect,
                                      ply=args.ply, extent=args.extent, resolution=args.resolution,
                                      seed=args.seed)
        inst = gen_random(config)
        metadata["shape"] = args.shape
    elif args.kind == "checkerboard":
        if args.double_cover:
            graph = bipartite_double_cover(nx.gnp_random_graph(args.vertices, args.p, seed=args.seed))
        else:
            graph = random_bipartite_graph(args.a, args.b, args.p, args.seed)
        inst = gen_checkerboard(graph, args.eps, k=args.k)
    else:
        hypergraph = random_hypergraph(args.vertices, args.edges, args.seed)
        inst = gen_convex_from_hypergraph(hypergraph, k=args.k)

    write_instance(inst, args.output, metadata)
    print(f"实例已写入: {args.output} (n={inst.n}, m={inst.m}, k={inst.k})")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, system: ExposureSystem) -> int:
    """求解实例，写文件或打印结果记录"""
    inst = read_instance(args.instance)
    record = system.solve(inst, args.algo, alpha=args.alpha, eps=args.eps, budget=args.budget,
                          timing=not args.no_timing)
    if args.output:
        write_result(record, args.output)
        print(f"结果已写入: {args.output} (value={record.value}, 删除={record.deleted_count})")
    else:
        print(result_to_json(record))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, system: ExposureSystem) -> int:
    """复核结果记录，不一致时返回非零退出码"""
    result = system.verify(read_instance(args.instance), read_result(args.result))
    print(result["message"])
    return EXIT_OK if result["success"] else EXIT_INVALID


def cmd_bench(args: argparse.Namespace, system: ExposureSystem) -> int:
    """在语料目录上运行基准测试并输出比值表"""
    algorithms = args.algorithms.split(",") if args.algorithms else None
    table = system.bench(args.corpus or system.config.data_dir, algorithms)
    if args.output:
        table.to_csv(args.output, index=False)
        print(f"比值表已写入: {args.output}")
    else:
        print(table.to_string(index=False))
    if args.plot_data:
        ratio_plot_data(table).to_csv(args.plot_data, index=False)
        print(f"绘图数据已写入: {args.plot_data}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，解析命令行并返回退出码"""
    args = build_parser().parse_args(argv)
    logger = get_logger("main")
    try:
        # 加载配置
        config = load_config(args.config)
        configure_logging(config.logging.log_dir, "DEBUG" if config.debug else config.logging.level)

        if args.command == "gen":
            return cmd_gen(args)

        system = ExposureSystem(config)
        if args.command == "solve":
            return cmd_solve(args, system)
        if args.command == "verify":
            return cmd_verify(args, system)
        return cmd_bench(args, system)

    except BudgetExceededError as e:
        print(f"求解不可行: {e}", file=sys.stderr)
        print("请增大 epsilon、减小实例规模或调整配置中的预算上限", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InvalidInputError as e:
        print(f"输入不合法: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ConsistencyError as e:
        print(f"一致性检查失败: {e}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as e:
        print(f"文件未找到: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as e:
        print(f"参数错误: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:
        logger.error(f"运行失败: {e}\n{traceback.format_exc()}")
        print(f"运行失败: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
