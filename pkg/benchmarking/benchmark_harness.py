"""
Harness benchmark: catalog generation and theorem sweeps at increasing caps.
Measures wall time, per-theorem time, CPU usage and memory usage, and compares
thread pool sizes on the same catalog.
"""
import os
import statistics
import sys
import threading
import time
from datetime import datetime

import psutil

from biamalg.config import configure
from biamalg.harness.catalog import Caps, generate_catalog
from biamalg.harness.suite import run_suite

RESULTS_FILE = "HARNESS_BENCHMARKS.txt"


class ResourceMonitor:
    def __init__(self):
        self.process = psutil.Process()
        self.monitoring = False
        self.cpu_samples = []
        self.memory_samples = []
        self.monitor_thread = None

    def start_monitoring(self):
        self.monitoring = True
        self.cpu_samples = []
        self.memory_samples = []
        self.monitor_thread = threading.Thread(target=self._monitor_resources, daemon=True)
        self.monitor_thread.start()

    def stop_monitoring(self):
        self.monitoring = False
        if self.monitor_thread:
            self.monitor_thread.join(timeout=1)

    def _monitor_resources(self):
        while self.monitoring:
            try:
                self.cpu_samples.append(self.process.cpu_percent())
                self.memory_samples.append(self.process.memory_info().rss / (1024 * 1024))
                time.sleep(0.05)
            except psutil.Error:
                break

    def get_stats(self):
        if not self.cpu_samples or not self.memory_samples:
            return {'cpu_avg': 0, 'cpu_max': 0, 'memory_avg': 0, 'memory_max': 0, 'memory_peak_delta': 0}
        return {
            'cpu_avg': statistics.mean(self.cpu_samples),
            'cpu_max': max(self.cpu_samples),
            'memory_avg': statistics.mean(self.memory_samples),
            'memory_max': max(self.memory_samples),
            'memory_peak_delta': max(self.memory_samples) - min(self.memory_samples),
        }


def benchmark_with_resources(label, caps, workers):
    """Generate the catalog for ``caps`` and run every theorem on it"""
    print(f"  {label}: {workers} worker(s)...")
    monitor = ResourceMonitor()
    monitor.start_monitoring()

    start = time.perf_counter()
    catalog = generate_catalog(caps, seed=0)
    catalog_seconds = time.perf_counter() - start
    configure(workers=workers)
    report = run_suite(catalog, workers=workers)
    total = time.perf_counter() - start

    monitor.stop_monitoring()
    stats = monitor.get_stats()
    slowest = sorted(((s, t) for t, s in report.timing.items() if t != "total"), reverse=True)[:5]
    return {
        'label': label,
        'workers': workers,
        'rings': len(catalog.rings),
        'instances': len(catalog),
        'catalog_seconds': catalog_seconds,
        'total_seconds': total,
        'ok': report.ok,
        'slowest': [(theorem, seconds) for seconds, theorem in slowest],
        'cpu_avg_percent': stats['cpu_avg'],
        'cpu_max_percent': stats['cpu_max'],
        'memory_avg_mb': stats['memory_avg'],
        'memory_peak_delta_mb': stats['memory_peak_delta'],
    }


def save_results(results, test_config):
    """Save benchmark results to file"""
    with open(RESULTS_FILE, 'w') as f:
        f.write("=" * 80 + "\n")
        f.write("HARNESS BENCHMARK RESULTS\n")
        f.write("=" * 80 + "\n")
        f.write(f"Date: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
        f.write(f"Python Version: {sys.version}\n")
        f.write(f"CPU Count: {psutil.cpu_count()}\n")
        f.write(f"Total RAM: {psutil.virtual_memory().total / (1024**3):.1f} GB\n")
        f.write(f"Test Configuration: {test_config}\n")
        f.write("-" * 80 + "\n\n")

        f.write("PERFORMANCE SUMMARY\n")
        f.write("-" * 80 + "\n")
        f.write(f"{'Run':<22} {'Workers':<8} {'Inst.':<7} {'Catalog s':<10} {'Total s':<10} {'CPU %':<8} {'Mem (MB)':<10} {'OK':<4}\n")
        f.write("-" * 80 + "\n")
        for result in results:
            f.write(f"{result['label']:<22} "
                    f"{result['workers']:<8} "
                    f"{result['instances']:<7} "
                    f"{result['catalog_seconds']:<10.2f} "
                    f"{result['total_seconds']:<10.2f} "
                    f"{result['cpu_avg_percent']:<8.1f} "
                    f"{result['memory_avg_mb']:<10.1f} "
                    f"{'yes' if result['ok'] else 'NO':<4}\n")

        f.write("\n" + "=" * 80 + "\n")
        f.write("SLOWEST THEOREMS\n")
        f.write("=" * 80 + "\n\n")
        for result in results:
            f.write(f"{result['label']} ({result['workers']} worker(s)):\n")
            for theorem, seconds in result['slowest']:
                f.write(f"  {theorem:<28} {seconds:.3f}s\n")
            f.write(f"  memory peak delta: {result['memory_peak_delta_mb']:.1f} MB, "
                    f"cpu max: {result['cpu_max_percent']:.1f}%\n\n")


if __name__ == "__main__":
    test_configs = [
        {"caps": Caps(max_ring=8, max_instance=128, max_instances=30), "label": "Quick (rings <= 8)"},
        {"caps": Caps(max_ring=16, max_instance=128, max_instances=120), "label": "Default caps"},
        {"caps": Caps(max_ring=16, max_instance=256, max_instances=400), "label": "Wide (|R| <= 256)"},
    ]

    print("Available test configurations:")
    for i, config in enumerate(test_configs):
        print(f"{i+1}. {config['label']}")

    try:
        choice = int(input("\nSelect test configuration (1-3): ")) - 1
        if choice < 0 or choice >= len(test_configs):
            raise ValueError()
        selected_config = test_configs[choice]
    except (ValueError, EOFError):
        print("Invalid selection, using Default caps")
        selected_config = test_configs[1]

    print(f"\nRunning {selected_config['label']}...")
    print(f"System: {psutil.cpu_count()} CPU cores, {psutil.virtual_memory().total / (1024**3):.1f} GB RAM")
    print("=" * 80)

    results = []
    for workers in sorted({1, min(4, os.cpu_count() or 1)}):
        results.append(benchmark_with_resources(selected_config['label'], selected_config['caps'], workers))
        r = results[-1]
        print(f"    {r['instances']} instances over {r['rings']} rings in {r['total_seconds']:.2f}s "
              f"(catalog {r['catalog_seconds']:.2f}s), all theorems hold: {r['ok']}")

    save_results(results, selected_config['caps'].as_dict())
    print(f"\nResults written to {RESULTS_FILE}")
