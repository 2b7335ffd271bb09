import csv,sys
src=sys.argv[1]; dst=sys.argv[2]
rows=list(csv.reader(open(src),delimiter='\t'))[3:]
maps={1:{'female':'0.0','male':'1.0'},
2:{'typical ang':'1.0','atypical ang':'2.0','non-anginal':'3.0','asymptomatic':'4.0'},
6:{'normal':'0.0','ST-T abnormal':'1.0','left vent hypertrophy':'2.0'},
10:{'upsloping':'1.0','flat':'2.0','downsloping':'3.0'},
12:{'normal':'3.0','fixed defect':'6.0','reversable defect':'7.0'}}
def num(s):
    if s=='?': return '?'
    f=float(s); return repr(f)
with open(dst,'w') as out:
    for r in rows:
        o=[]
        for i,v in enumerate(r):
            if v=='?': o.append('?')
            elif i in maps: o.append(maps[i][v])
            elif i==13: o.append(str(int(v)))
            else: o.append(num(v))
        out.write(','.join(o)+'\n')
