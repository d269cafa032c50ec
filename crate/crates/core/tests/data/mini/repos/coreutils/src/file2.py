line 0 of coreutils.py
line 1 of coreutils.py
line 2 of coreutils.py
line 3 of coreutils.py
line 4 of coreutils.py
line 5 of coreutils.py
line 6 of coreutils.py
line 7 of coreutils.py
line 8 of coreutils.py
line 9 of coreutils.py
line 10 of coreutils.py
line 11 of coreutils.py
line 12 of coreutils.py
line 13 of coreutils.py
line 14 of coreutils.py
line 15 of coreutils.py
line 16 of coreutils.py
line 17 of coreutils.py
line 18 of coreutils.py
line 19 of coreutils.py
line 20 of coreutils.py
line 21 of coreutils.py
line 22 of coreutils.py
line 23 of coreutils.py
line 24 of coreutils.py
line 25 of coreutils.py
line 26 of coreutils.py
line 27 of coreutils.py
line 28 of coreutils.py
line 29 of coreutils.py
line 30 of coreutils.py
line 31 of coreutils.py
line 32 of coreutils.py
line 33 of coreutils.py
line 34 of coreutils.py
line 35 of coreutils.py
line 36 of coreutils.py
line 37 of coreutils.py
line 38 of coreutils.py
line 39 of coreutils.py
line 40 of coreutils.py
line 41 of coreutils.py
line 42 of coreutils.py
line 43 of coreutils.py
line 44 of coreutils.py
line 45 of coreutils.py
line 46 of coreutils.py
line 47 of coreutils.py
line 48 of coreutils.py
line 49 of coreutils.py
line 50 of coreutils.py
line 51 of coreutils.py
line 52 of coreutils.py
line 53 of coreutils.py
line 54 of coreutils.py
line 55 of coreutils.py
line 56 of coreutils.py
line 57 of coreutils.py
line 58 of coreutils.py
line 59 of coreutils.py
line 60 of coreutils.py
line 61 of coreutils.py
line 62 of coreutils.py
line 63 of coreutils.py
line 64 of coreutils.py
line 65 of coreutils.py
line 66 of coreutils.py
line 67 of coreutils.py
line 68 of coreutils.py
line 69 of coreutils.py
line 70 of coreutils.py
line 71 of coreutils.py
line 72 of coreutils.py
line 73 of coreutils.py
line 74 of coreutils.py
line 75 of coreutils.py
line 76 of coreutils.py
line 77 of coreutils.py
line 78 of coreutils.py
line 79 of coreutils.py
line 80 of coreutils.py
line 81 of coreutils.py
line 82 of coreutils.py
line 83 of coreutils.py
line 84 of coreutils.py
line 85 of coreutils.py
line 86 of coreutils.py
line 87 of coreutils.py
line 88 of coreutils.py
line 89 of coreutils.py
line 90 of coreutils.py
line 91 of coreutils.py
line 92 of coreutils.py
line 93 of coreutils.py
line 94 of coreutils.py
line 95 of coreutils.py
line 96 of coreutils.py
line 97 of coreutils.py
line 98 of coreutils.py
line 99 of coreutils.py
line 100 of coreutils.py
line 101 of coreutils.py
line 102 of coreutils.py
line 103 of coreutils.py
line 104 of coreutils.py
line 105 of coreutils.py
line 106 of coreutils.py
line 107 of coreutils.py
line 108 of coreutils.py
line 109 of coreutils.py
line 110 of coreutils.py
line 111 of coreutils.py
line 112 of coreutils.py
line 113 of coreutils.py
line 114 of coreutils.py
line 115 of coreutils.py
line 116 of coreutils.py
line 117 of coreutils.py
line 118 of coreutils.py
line 119 of coreutils.py
line 120 of coreutils.py
line 121 of coreutils.py
line 122 of coreutils.py
line 123 of coreutils.py
line 124 of coreutils.py
line 125 of coreutils.py