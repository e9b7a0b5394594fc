from boojum_dist.cli import run

run()
