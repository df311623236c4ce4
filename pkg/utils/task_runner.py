#!/usr/bin/env python3
"""带超时的任务执行器模块"""

import queue
import time
import traceback
import multiprocessing
from typing import Any, Callable, Dict, Optional, Tuple

# 等待子进程结果时的轮询间隔（秒）
_POLL_INTERVAL = 0.05


class TaskRunner:
    """在独立进程中执行求解任务，超时则终止进程"""

    def __init__(self, timeout: Optional[float] = 60):
        """初始化任务执行器，timeout 为 None 或 0 时在当前进程直接执行"""
        self.timeout = timeout

    @staticmethod
    def _run_in_child(func: Callable[..., Any], args: Tuple[Any, ...], result_queue: multiprocessing.Queue) -> None:
        """子进程入口"""
        result: Dict[str, Any] = {"output": None, "error": ""}
        try:
            result["output"] = func(*args)
        except Exception as e:
            result["error"] = str(e)
            result["error_type"] = type(e).__name__
            result["traceback"] = traceback.format_exc()
        finally:
            result_queue.put(result)

    @staticmethod
    def _wait_result(process: multiprocessing.Process, result_queue: multiprocessing.Queue,
                     timeout: float) -> Optional[Dict[str, Any]]:
        """轮询结果队列，直到拿到结果、子进程退出或超时"""
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            try:
                return result_queue.get(timeout=_POLL_INTERVAL)
            except queue.Empty:
                if not process.is_alive():
                    # 子进程退出前写入的结果可能刚刚到达
                    try:
                        return result_queue.get(timeout=_POLL_INTERVAL)
                    except queue.Empty:
                        return None
        return None

    def run(self, func: Callable[..., Any], *args: Any) -> Dict[str, Any]:
        """执行任务并返回 {"output", "error"}，func 必须可被 pickle"""
        if not self.timeout:
            try:
                return {"output": func(*args), "error": ""}
            except Exception as e:
                return {"output": None, "error": str(e), "error_type": type(e).__name__}

        result_queue: multiprocessing.Queue = multiprocessing.Queue()
        process = multiprocessing.Process(
            target=self._run_in_child,
            args=(func, args, result_queue)
        )

        try:
            process.start()

            # 先取结果再 join，避免子进程因队列未清空而阻塞
            result = self._wait_result(process, result_queue, self.timeout)

            if result is None:
                if process.is_alive():
                    process.terminate()
                    process.join()
                    return {
                        "output": None,
                        "error": f"任务执行超时（{self.timeout}秒）",
                        "error_type": "TimeoutError"
                    }
                process.join()
                return {
                    "output": None,
                    "error": f"子进程异常退出，退出码 {process.exitcode}",
                    "error_type": "ChildProcessError"
                }

            process.join()
            return result

        except Exception as e:
            if process.is_alive():
                process.terminate()
                process.join()
            return {"output": None, "error": str(e), "error_type": type(e).__name__}
