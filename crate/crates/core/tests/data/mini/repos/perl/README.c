line 0 of perl.c
line 1 of perl.c
line 2 of perl.c
line 3 of perl.c
line 4 of perl.c
line 5 of perl.c
line 6 of perl.c
line 7 of perl.c
line 8 of perl.c
line 9 of perl.c
line 10 of perl.c
line 11 of perl.c
line 12 of perl.c
line 13 of perl.c
line 14 of perl.c
line 15 of perl.c
line 16 of perl.c
line 17 of perl.c
line 18 of perl.c
line 19 of perl.c
line 20 of perl.c
line 21 of perl.c
line 22 of perl.c
line 23 of perl.c
line 24 of perl.c
line 25 of perl.c
line 26 of perl.c
line 27 of perl.c
line 28 of perl.c
line 29 of perl.c
line 30 of perl.c
line 31 of perl.c
line 32 of perl.c
line 33 of perl.c
line 34 of perl.c
line 35 of perl.c
line 36 of perl.c
line 37 of perl.c
line 38 of perl.c
line 39 of perl.c
line 40 of perl.c
line 41 of perl.c
line 42 of perl.c
line 43 of perl.c
line 44 of perl.c
line 45 of perl.c
line 46 of perl.c
line 47 of perl.c
line 48 of perl.c
line 49 of perl.c
line 50 of perl.c
line 51 of perl.c
line 52 of perl.c
line 53 of perl.c
line 54 of perl.c
line 55 of perl.c
line 56 of perl.c
line 57 of perl.c
line 58 of perl.c
line 59 of perl.c
line 60 of perl.c
line 61 of perl.c
line 62 of perl.c
line 63 of perl.c
line 64 of perl.c
line 65 of perl.c
line 66 of perl.c
line 67 of perl.c
line 68 of perl.c
line 69 of perl.c
line 70 of perl.c
line 71 of perl.c
line 72 of perl.c
line 73 of perl.c
line 74 of perl.c
line 75 of perl.c
line 76 of perl.c
line 77 of perl.c
line 78 of perl.c
line 79 of perl.c
line 80 of perl.c
line 81 of perl.c
line 82 of perl.c
line 83 of perl.c
line 84 of perl.c
line 85 of perl.c
line 86 of perl.c
line 87 of perl.c
line 88 of perl.c
line 89 of perl.c
line 90 of perl.c
line 91 of perl.c
line 92 of perl.c
line 93 of perl.c
line 94 of perl.c
line 95 of perl.c
line 96 of perl.c
line 97 of perl.c
line 98 of perl.c
line 99 of perl.c
line 100 of perl.c
line 101 of perl.c
line 102 of perl.c
line 103 of perl.c
line 104 of perl.c
line 105 of perl.c
line 106 of perl.c
line 107 of perl.c
line 108 of perl.c
line 109 of perl.c
line 110 of perl.c
line 111 of perl.c
line 112 of perl.c
line 113 of perl.c
line 114 of perl.c
line 115 of perl.c
line 116 of perl.c
line 117 of perl.c
line 118 of perl.c
line 119 of perl.c
line 120 of perl.c
line 121 of perl.c
line 122 of perl.c
line 123 of perl.c
line 124 of perl.c
line 125 of perl.c
line 126 of perl.c
line 127 of perl.c
line 128 of perl.c
line 129 of perl.c
line 130 of perl.c
line 131 of perl.c
line 132 of perl.c
line 133 of perl.c
line 134 of perl.c
line 135 of perl.c
line 136 of perl.c
line 137 of perl.c
line 138 of perl.c
line 139 of perl.c
line 140 of perl.c
line 141 of perl.c
line 142 of perl.c
line 143 of perl.c
line 144 of perl.c
line 145 of perl.c
line 146 of perl.c
line 147 of perl.c
line 148 of perl.c
line 149 of perl.c
line 150 of perl.c
line 151 of perl.c
line 152 of perl.c
line 153 of perl.c
line 154 of perl.c
line 155 of perl.c
line 156 of perl.c
line 157 of perl.c
line 158 of perl.c
line 159 of perl.c
line 160 of perl.c
line 161 of perl.c
line 162 of perl.c
line 163 of perl.c
line 164 of perl.c
line 165 of perl.c
line 166 of perl.c
line 167 of perl.c
line 168 of perl.c
line 169 of perl.c
line 170 of perl.c
line 171 of perl.c
