"""
Writes the K = 2 properness panels as CSV, one file per shape, ready for
plotting r1 against r2 colored by the proper column.
"""
from boojum_dist.cli import scan_region

SHAPES = (-2.0, -0.5, 1.0, 3.0)
R_RANGE = (0.01, 3.0)
STEPS = 100


if __name__ == '__main__':
    for m in SHAPES:
        frame = scan_region(m, R_RANGE, R_RANGE, STEPS).to_frame()
        path = f'region_m{m:+.1f}.csv'
        frame.to_csv(path, index=False, na_rep='', lineterminator='\n')
        print(f'{path}: {frame["proper"].sum()} of {len(frame)} proper')
