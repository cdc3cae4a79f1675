"""
Gnuplot scripts rendering the CSV artifacts
Scripts are plain text next to the data, so a plot is one `gnuplot <script>` away
"""
from typing import List

HEADER = [
    'set datafile separator ","',
    'set datafile commentschars "#"',
    'set grid',
]


class PlotScriptBuilder:
    """Build gnuplot scripts for each artifact kind"""

    @staticmethod
    def _script(output: str, body: List[str]) -> str:
        lines = list(HEADER) + ['set terminal pngcairo size 900,600', f'set output "{output}"'] + body
        return "\n".join(lines) + "\n"

    @staticmethod
    def energy_trace(csv_name: str, stem: str) -> str:
        """log E vs t, then log E vs log t"""
        return PlotScriptBuilder._script(f"{stem}_semilog.png", [
            'set xlabel "t"',
            'set ylabel "E(t)"',
            'set logscale y',
            f'plot "{csv_name}" skip 1 using 1:2 with lines title "energy"',
            f'set output "{stem}_loglog.png"',
            'set logscale xy',
            f'plot "{csv_name}" skip 1 using 1:2 with lines title "energy"',
        ])

    @staticmethod
    def resolvent_sweep(csv_name: str, stem: str) -> str:
        return PlotScriptBuilder._script(f"{stem}.png", [
            'set xlabel "lambda"',
            'set ylabel "||(i lambda - A_h)^{-1}||"',
            'set logscale xy',
            f'plot "{csv_name}" skip 1 using 1:2 with linespoints title "resolvent norm"',
        ])

    @staticmethod
    def spectrum(csv_name: str, stem: str) -> str:
        return PlotScriptBuilder._script(f"{stem}.png", [
            'set xlabel "Re"',
            'set ylabel "Im"',
            f'plot "{csv_name}" skip 1 using 1:2 with points pt 7 ps 0.5 title "eigenvalues"',
        ])

    @staticmethod
    def witness(csv_name: str, stem: str) -> str:
        return PlotScriptBuilder._script(f"{stem}.png", [
            'set xlabel "n"',
            'set logscale xy',
            f'plot "{csv_name}" skip 1 using 1:9 with linespoints title "||V_n||", \\',
            f'     "{csv_name}" skip 1 using 1:10 with linespoints title "||(i lambda_n - A) V_n||"',
        ])
