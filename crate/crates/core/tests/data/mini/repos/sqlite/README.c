line 0 of sqlite.c
line 1 of sqlite.c
line 2 of sqlite.c
line 3 of sqlite.c
line 4 of sqlite.c
line 5 of sqlite.c
line 6 of sqlite.c
line 7 of sqlite.c
line 8 of sqlite.c
line 9 of sqlite.c
line 10 of sqlite.c
line 11 of sqlite.c
line 12 of sqlite.c
line 13 of sqlite.c
line 14 of sqlite.c
line 15 of sqlite.c
line 16 of sqlite.c
line 17 of sqlite.c
line 18 of sqlite.c
line 19 of sqlite.c
line 20 of sqlite.c
line 21 of sqlite.c
line 22 of sqlite.c
line 23 of sqlite.c
line 24 of sqlite.c
line 25 of sqlite.c
line 26 of sqlite.c
line 27 of sqlite.c
line 28 of sqlite.c
line 29 of sqlite.c
line 30 of sqlite.c
line 31 of sqlite.c
line 32 of sqlite.c
line 33 of sqlite.c
line 34 of sqlite.c
line 35 of sqlite.c
line 36 of sqlite.c
line 37 of sqlite.c
line 38 of sqlite.c
line 39 of sqlite.c
line 40 of sqlite.c
line 41 of sqlite.c
line 42 of sqlite.c
line 43 of sqlite.c
line 44 of sqlite.c
line 45 of sqlite.c
line 46 of sqlite.c
line 47 of sqlite.c
line 48 of sqlite.c
line 49 of sqlite.c
line 50 of sqlite.c
line 51 of sqlite.c
line 52 of sqlite.c
line 53 of sqlite.c
line 54 of sqlite.c
line 55 of sqlite.c
line 56 of sqlite.c
line 57 of sqlite.c
line 58 of sqlite.c
line 59 of sqlite.c
line 60 of sqlite.c
line 61 of sqlite.c
line 62 of sqlite.c
line 63 of sqlite.c
line 64 of sqlite.c
line 65 of sqlite.c
line 66 of sqlite.c
line 67 of sqlite.c
line 68 of sqlite.c
line 69 of sqlite.c
line 70 of sqlite.c
line 71 of sqlite.c
line 72 of sqlite.c
line 73 of sqlite.c
line 74 of sqlite.c
line 75 of sqlite.c
line 76 of sqlite.c
line 77 of sqlite.c
line 78 of sqlite.c
line 79 of sqlite.c
line 80 of sqlite.c
line 81 of sqlite.c
line 82 of sqlite.c
line 83 of sqlite.c
line 84 of sqlite.c
line 85 of sqlite.c
line 86 of sqlite.c
line 87 of sqlite.c
line 88 of sqlite.c
line 89 of sqlite.c
line 90 of sqlite.c
line 91 of sqlite.c
line 92 of sqlite.c
line 93 of sqlite.c
line 94 of sqlite.c
line 95 of sqlite.c
line 96 of sqlite.c
line 97 of sqlite.c
line 98 of sqlite.c
line 99 of sqlite.c
line 100 of sqlite.c
line 101 of sqlite.c
line 102 of sqlite.c
line 103 of sqlite.c
line 104 of sqlite.c
line 105 of sqlite.c
line 106 of sqlite.c
line 107 of sqlite.c
line 108 of sqlite.c
line 109 of sqlite.c
line 110 of sqlite.c
line 111 of sqlite.c
line 112 of sqlite.c
line 113 of sqlite.c
line 114 of sqlite.c
line 115 of sqlite.c
line 116 of sqlite.c
line 117 of sqlite.c
line 118 of sqlite.c
line 119 of sqlite.c
line 120 of sqlite.c
line 121 of sqlite.c
line 122 of sqlite.c
line 123 of sqlite.c
line 124 of sqlite.c
line 125 of sqlite.c
line 126 of sqlite.c
line 127 of sqlite.c
line 128 of sqlite.c
line 129 of sqlite.c
line 130 of sqlite.c
line 131 of sqlite.c
line 132 of sqlite.c
line 133 of sqlite.c
line 134 of sqlite.c
line 135 of sqlite.c
line 136 of sqlite.c
line 137 of sqlite.c
line 138 of sqlite.c
line 139 of sqlite.c
line 140 of sqlite.c
line 141 of sqlite.c
line 142 of sqlite.c
line 143 of sqlite.c
line 144 of sqlite.c
line 145 of sqlite.c
line 146 of sqlite.c
line 147 of sqlite.c
line 148 of sqlite.c
line 149 of sqlite.c
line 150 of sqlite.c
line 151 of sqlite.c
line 152 of sqlite.c
line 153 of sqlite.c
line 154 of sqlite.c
line 155 of sqlite.c
line 156 of sqlite.c
line 157 of sqlite.c
line 158 of sqlite.c
line 159 of sqlite.c
line 160 of sqlite.c
line 161 of sqlite.c
line 162 of sqlite.c
line 163 of sqlite.c
line 164 of sqlite.c
line 165 of sqlite.c
line 166 of sqlite.c
line 167 of sqlite.c
line 168 of sqlite.c
line 169 of sqlite.c
line 170 of sqlite.c
line 171 of sqlite.c
line 172 of sqlite.c
line 173 of sqlite.c
line 174 of sqlite.c
line 175 of sqlite.c
line 176 of sqlite.c
line 177 of sqlite.c
line 178 of sqlite.c
line 179 of sqlite.c
line 180 of sqlite.c
line 181 of sqlite.c
line 182 of sqlite.c
line 183 of sqlite.c
line 184 of sqlite.c
line 185 of sqlite.c
line 186 of sqlite.c
line 187 of sqlite.c
line 188 of sqlite.c
line 189 of sqlite.c
line 190 of sqlite.c
line 191 of sqlite.c
