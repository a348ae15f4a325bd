#!/usr/bin/env python3
# Copyright (c) 2026 The RIPS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the desk map: a walled 41x41 room inside a 198x209 grid.

The room has four 2x2 pillars and a 1x3 table, which leaves 1662 free
cells. The central 11x11 square (x 93..103, y 99..109) is the
high-security area that scenarios switch to keep-out.
"""

import argparse
import pathlib

WIDTH, HEIGHT = 198, 209
ROOM_X, ROOM_Y, ROOM_SIZE = 78, 84, 41
PILLARS = [(83, 88), (112, 88), (83, 119), (112, 119)]
TABLE = [(97, 90), (98, 90), (99, 90)]


def build():
    grid = [['#'] * WIDTH for _ in range(HEIGHT)]
    for y in range(ROOM_Y, ROOM_Y + ROOM_SIZE):
        for x in range(ROOM_X, ROOM_X + ROOM_SIZE):
            grid[y][x] = '.'
    for px, py in PILLARS:
        for dy in range(2):
            for dx in range(2):
                grid[py + dy][px + dx] = '#'
    for x, y in TABLE:
        grid[y][x] = '#'
    return grid


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument('output', type=pathlib.Path)
    args = parser.parse_args()
    grid = build()
    free = sum(row.count('.') for row in grid)
    occupied = WIDTH * HEIGHT - free
    with args.output.open('w') as out:
        out.write(f'{WIDTH} {HEIGHT}\n')
        for row in grid:
            out.write(''.join(row) + '\n')
    print(f'{args.output}: {WIDTH}x{HEIGHT}, {free} free, {occupied} occupied')


if __name__ == '__main__':
    main()
